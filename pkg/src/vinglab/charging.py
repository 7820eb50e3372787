"""Cross-graph charge schemes over a census, kept in exact rationals."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from .census import (DEFAULT_BUDGET, NO_FILTER, CensusFilter, GeoGraph, as_catalog, census_scan,
                     class_k, count_class)
from .errors import FanInExceeded
from .vings import Ving, is_x_ving, mode_k, reduce_to_x3, reduce_to_x4, x_completion

Key = tuple[int, int]  # (edge bitset, vertex)


def exact(value) -> Fraction:
    """Exact rational from an int, Fraction or decimal literal (str or float repr)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class ChargeRule:
    """Charge of an i-ving in a graph with m edges on N points.

    ``offset``: alpha - i.  ``edge_linked``: a + 2m/N - i.
    """

    form: str
    alpha: Optional[int] = None
    a: Optional[Fraction] = None
    mode: str = "plane"

    @classmethod
    def offset(cls, alpha: int, mode: str = "plane") -> "ChargeRule":
        return cls("offset", alpha=alpha, mode=mode)

    @classmethod
    def edge_linked(cls, a, mode: str = "plane") -> "ChargeRule":
        return cls("edge_linked", a=exact(a), mode=mode)

    def charge(self, i: int, m: int, N: int) -> Fraction:
        if self.form == "offset":
            return Fraction(self.alpha - i)
        return self.a + Fraction(2 * m, N) - i


def per_graph_total(G: GeoGraph, rule: ChargeRule) -> Fraction:
    N, m = G.N, G.m
    return sum((rule.charge(d, m, N) for d in G.degrees()), Fraction(0))


@dataclass(frozen=True)
class TransferStep:
    amount: Fraction
    from_degrees: tuple[int, ...]
    to_degree: int
    fan_in: int

    def __post_init__(self):
        if self.amount <= 0:
            raise ValueError("transfer amount must be positive")
        if self.to_degree not in (3, 4):
            raise ValueError("transfers target degree 3 or 4")


@dataclass
class ChargeLedger:
    rule: Optional[ChargeRule]
    entries: dict = field(default_factory=dict)
    degrees: dict = field(default_factory=dict)
    transfers: list = field(default_factory=list)
    initial_total: Fraction = Fraction(0)

    @property
    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def max_entry(self) -> Fraction:
        return max(self.entries.values(), default=Fraction(0))

    def add(self, key: Key, amount: Fraction, degree: int):
        self.entries[key] = self.entries.get(key, Fraction(0)) + amount
        self.degrees[key] = degree

    def copy(self) -> "ChargeLedger":
        return ChargeLedger(self.rule, dict(self.entries), dict(self.degrees),
                            list(self.transfers), self.initial_total)

    def max_by_degree(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for key, val in self.entries.items():
            d = self.degrees[key]
            if d not in out or val > out[d]:
                out[d] = val
        return dict(sorted(out.items()))


def route_to_x(graphs: Iterable[GeoGraph], rule: ChargeRule) -> ChargeLedger:
    """Move each ving's charge onto its x-completion.

    Targets are keyed by (edge bitset, vertex) whether or not the target
    graph itself passes the census filter.
    """
    ledger = ChargeLedger(rule)
    acc = defaultdict(Fraction)
    degs = {}
    initial = Fraction(0)
    for G in graphs:
        N, m = G.N, G.m
        for p, d in enumerate(G.degrees()):
            q = rule.charge(d, m, N)
            initial += q
            x = x_completion(Ving(p, G), rule.mode)
            key = x.key
            acc[key] += q
            if key not in degs:
                degs[key] = x.degree
    ledger.entries = dict(acc)
    ledger.degrees = degs
    ledger.initial_total = initial
    return ledger


def binomial_charge_sum(d: int, alpha) -> Fraction:
    """Sum over i of C(d, i) * (alpha - i): all predecessors of an x-ving of degree d."""
    alpha = exact(alpha)
    return sum((comb(d, i) * (alpha - i) for i in range(d + 1)), Fraction(0))


def closed_form_charge(d: int, alpha) -> Fraction:
    return Fraction(2) ** (d - 1) * (2 * exact(alpha) - d)


def xving_aggregate_charge(d: int, alpha) -> Fraction:
    if d < 0:
        raise ValueError("degree must be >= 0")
    direct = binomial_charge_sum(d, alpha)
    closed = closed_form_charge(d, alpha)
    if direct != closed:
        raise ArithmeticError(f"binomial sum {direct} != closed form {closed} at d={d}")
    return closed


@dataclass(frozen=True)
class IdentityReport:
    cls: str
    filt: CensusFilter
    lhs: int
    rhs: int
    relation: str
    ok: bool
    count: int
    lhs_at: tuple[int, ...] = ()
    rhs_at: tuple[int, ...] = ()

    def bad_vertices(self) -> list[int]:
        if self.relation == "eq":
            return [q for q, (a, b) in enumerate(zip(self.lhs_at, self.rhs_at)) if a != b]
        return [q for q, (a, b) in enumerate(zip(self.lhs_at, self.rhs_at)) if a > b]

    def describe(self) -> str:
        sym = "=" if self.relation == "eq" else "<="
        text = f"sum_G v_x(G) = {self.lhs} {sym} sum_q count(S-q) = {self.rhs}"
        bad = self.bad_vertices()
        if bad:
            text += f"; per-vertex mismatch at {bad}"
        return text


def verify_identity(S, cls: str = "plane", filt: CensusFilter = NO_FILTER,
                    budget: int = DEFAULT_BUDGET, workers: int = 1, catalog=None) -> IdentityReport:
    """Compare the x-ving total of a class census with the counts on every S minus a point.

    The check is made per vertex as well: the graphs in which q is an x-ving
    correspond one to one with the graphs on S minus q. Unfiltered classes
    must match exactly; filtered ones satisfy <=. The left side can be
    computed on a supplied (possibly mutated) catalog; the right side always
    rebuilds catalogs from the geometry.
    """
    cat = catalog if catalog is not None else as_catalog(S)
    k = class_k(cls)
    summary = census_scan(cat, k, filt, budget, workers)
    pts = cat.points
    rhs_at = tuple(count_class(pts.without(q), cls, NO_FILTER, budget, workers)
                   for q in range(pts.N))
    rhs = sum(rhs_at)
    relation = "eq" if filt.trivial else "le"
    rep = IdentityReport(cls, filt, summary.vx, rhs, relation, False, summary.count,
                         tuple(summary.vx_at), rhs_at)
    total_ok = rep.lhs == rhs if relation == "eq" else rep.lhs <= rhs
    return replace(rep, ok=total_ok and not rep.bad_vertices())


Policy = Callable[[Key, "TransferStep", "ChargeLedger"], Sequence[tuple[Key, Key, int]]]


class ReductionPolicy:
    """Transfer routing through the canonical x3 / x4 reductions on a catalog.

    For a degree-3 step a source gives to its x3 reduction. For a degree-4
    step both the source and its x3 reduction give to the x4 ving obtained
    by growing the x3 triangle. Sources outside the reduction domain are
    recorded in ``skipped``.
    """

    def __init__(self, catalog):
        self.catalog = catalog
        self.skipped: list[Key] = []

    def _ving(self, key: Key) -> Ving:
        return Ving(key[1], GeoGraph(self.catalog, key[0]))

    def __call__(self, key, step, ledger):
        from .errors import NotReducible
        src = self._ving(key)
        try:
            x3 = reduce_to_x3(src)
            if step.to_degree == 3:
                return [(key, x3.key, 3)]
            x4 = reduce_to_x4(x3, src)
        except NotReducible:
            self.skipped.append(key)
            return []
        return [(key, x4.key, 4), (x3.key, x4.key, 4)]


def apply_transfers(ledger: ChargeLedger, steps: Sequence[TransferStep], policy: Policy) -> ChargeLedger:
    """Apply transfer steps in order; each giver/receiver pair moves the step amount once."""
    out = ledger.copy()
    for step in steps:
        sources = sorted(k for k, d in out.degrees.items() if d in step.from_degrees)
        moves = {}
        for key in sources:
            for giver, receiver, rdeg in policy(key, step, out):
                moves[(giver, receiver)] = rdeg
        fan = defaultdict(set)
        for (giver, receiver) in moves:
            fan[receiver].add(giver)
        for receiver, givers in fan.items():
            if len(givers) > step.fan_in:
                raise FanInExceeded(f"{len(givers)} sources charge {receiver}, bound {step.fan_in}")
        for (giver, receiver), rdeg in sorted(moves.items()):
            out.add(giver, -step.amount, out.degrees[giver])
            out.add(receiver, step.amount, rdeg)
        out.transfers.append(step)
    return out


def seven_sums(a: int, b: int, c: int) -> tuple[int, ...]:
    return (3 + a, 3 + b, 3 + c, 3 + a + b, 3 + a + c, 3 + b + c, 3 + a + b + c)


@dataclass(frozen=True)
class SevenSumsResult:
    max_hits: int
    witness: tuple[int, int, int]
    targets: tuple[int, ...]
    bound: int

    @property
    def ok(self) -> bool:
        return self.max_hits <= 4


def seven_sums_check(bound: int = 30, targets: Iterable[int] = (12, 13)) -> SevenSumsResult:
    """Brute-force the largest number of the seven sums that land in ``targets``.

    Witness: among maximizers with a >= b >= c, the lexicographically
    smallest one whose hits cover every target value (falling back to the
    smallest maximizer when none covers them all).
    """
    targets = tuple(sorted(set(targets)))
    if bound < max(targets):
        raise ValueError("range bound must be at least the largest target")
    tset = set(targets)
    best = -1
    hits_at = {}
    for a, b, c in product(range(bound + 1), repeat=3):
        sums = seven_sums(a, b, c)
        h = sum(1 for s in sums if s in tset)
        if h > best:
            best = h
        if a >= b >= c:
            hits_at[(a, b, c)] = (h, tset <= set(sums))
    tops = sorted(t for t, (h, _) in hits_at.items() if h == best)
    covering = [t for t in tops if hits_at[t][1]]
    witness = (covering or tops)[0]
    return SevenSumsResult(best, witness, targets, bound)


def closed_form_violations(ledger: ChargeLedger, alpha: int) -> list[Key]:
    """Ledger entries whose routed charge differs from 2^(d-1)(2*alpha - d)."""
    return [k for k, v in ledger.entries.items() if v != closed_form_charge(ledger.degrees[k], alpha)]


def census_graphs(S, cls: str = "plane", filt: CensusFilter = NO_FILTER,
                  budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[GeoGraph]:
    cat = as_catalog(S)
    summary = census_scan(cat, class_k(cls), filt, budget, workers, collect=True)
    return [GeoGraph(cat, m) for m in summary.masks]


def x_keys(graphs: Iterable[GeoGraph], mode: str = "plane") -> list[Key]:
    out = []
    for G in graphs:
        for p in range(G.N):
            if is_x_ving(Ving(p, G), mode):
                out.append((G.edges, p))
    return out


__all__ = [
    "ChargeRule", "ChargeLedger", "TransferStep", "IdentityReport", "ReductionPolicy",
    "per_graph_total", "route_to_x", "xving_aggregate_charge", "binomial_charge_sum",
    "closed_form_charge", "verify_identity", "apply_transfers", "seven_sums_check",
    "seven_sums", "closed_form_violations", "census_graphs", "x_keys", "mode_k", "exact",
]
