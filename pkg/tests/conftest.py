import pytest

from vinglab.geom import PointSet
from vinglab.io import generate

CONVEX4 = PointSet([(0, 0), (10, 0), (10, 10), (0, 10)])
TRIANGLE = PointSet([(0, 0), (10, 0), (3, 7)])


def random_corpus():
    """25 seeded random sets with N cycling through 4..7."""
    return [generate("random", 4 + i % 4, seed=i) for i in range(25)]


def convex_corpus(sizes=(4, 5, 6, 7)):
    return [generate("convex", n, seed=0) for n in sizes]


def corpus(max_n=7):
    return [S for S in random_corpus() + convex_corpus() if S.N <= max_n]


@pytest.fixture(scope="session")
def convex4():
    return CONVEX4


@pytest.fixture(scope="session")
def triangle():
    return TRIANGLE



ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    """Remember one check of an acceptance criterion and echo it."""
    ACCEPTANCE.setdefault(criterion, []).append((ok, detail))
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        checks = ACCEPTANCE[key]
        failed = [d for ok, d in checks if not ok]
        detail = failed[0] if failed else f"checks run: {len(checks)}"
        terminalreporter.write_line(f"{'FAIL' if failed else 'PASS'}  {key}: {detail}")
