"""Exception types raised across vinglab."""


class VinglabError(Exception):
    """Base class for all vinglab errors."""


class RejectedPointSet(VinglabError, ValueError):
    """Point set has duplicates, a collinear triple, or out-of-range coordinates."""


class BudgetExceeded(VinglabError):
    """An enumeration visited more nodes than its configured budget."""

    def __init__(self, budget, nodes=None):
        self.budget = budget
        self.nodes = nodes
        msg = f"enumeration budget of {budget} nodes exhausted"
        if nodes is not None:
            msg += f" ({nodes} visited)"
        super().__init__(msg)


class NotInside(VinglabError):
    """Query point lies in no triangle of the given triangulation."""


class NotReducible(VinglabError, ValueError):
    """Ving is outside the domain of a reduction."""


class DegenerateDiagonal(VinglabError):
    """Every ear order puts the vertex on a triangulation diagonal."""


class FanInExceeded(VinglabError):
    """A transfer target received charge from more sources than allowed."""


class InconsistentSpec(VinglabError):
    """A ledger class stays above the equalized level after all transfers."""


class DomainError(VinglabError, ValueError):
    """Argument outside the domain of a closed-form expression."""


class NoRoot(VinglabError):
    """The balancing curves do not cross on the search interval."""


class GenerationFailed(VinglabError):
    """Point generator could not produce a general-position set."""


class CacheCorrupt(VinglabError):
    """A cache entry could not be decoded."""


class PointFileError(VinglabError, ValueError):
    """A point file line could not be parsed."""
