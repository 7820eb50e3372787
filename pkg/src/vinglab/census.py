"""Segment crossing catalog and exhaustive census of graph families.

A graph over a point set is a bitset over the catalog's segment list
(bit i = segment i). Every stream is emitted in increasing bitset order,
which is independent of the number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

from . import kernels
from .errors import BudgetExceeded, RejectedPointSet
from .geom import PointSet, Segment, proper_cross, validate_general_position

DEFAULT_BUDGET = 10**8
SPLIT_BITS = 5


class EdgeCatalog:
    """All N(N-1)/2 candidate segments of a point set with their crossing relation.

    ``conflict[i]`` is the bitset of segments that properly cross segment i.
    """

    def __init__(self, points: PointSet, conflict: Optional[Sequence[int]] = None):
        self.points = points
        n = points.N
        self.segments = [Segment(a, b) for a, b in combinations(range(n), 2)]
        self.index = {s: i for i, s in enumerate(self.segments)}
        if conflict is None:
            conflict = [0] * len(self.segments)
            for i, j in combinations(range(len(self.segments)), 2):
                if proper_cross(self.segments[i], self.segments[j], points):
                    conflict[i] |= 1 << j
                    conflict[j] |= 1 << i
        self.conflict = list(conflict)
        self.inc = [0] * n
        self.seg_at = [[] for _ in range(n)]
        for i, (a, b) in enumerate(self.segments):
            self.inc[a] |= 1 << i
            self.inc[b] |= 1 << i
            self.seg_at[a].append(i)
            self.seg_at[b].append(i)

    @property
    def N(self) -> int:
        return self.points.N

    @property
    def nseg(self) -> int:
        return len(self.segments)

    def seg(self, p: int, q: int) -> int:
        """Catalog index of segment pq."""
        return self.index[Segment.of(p, q)]

    def crosses(self, i: int, j: int) -> bool:
        return bool((self.conflict[i] >> j) & 1)

    def crossing_pairs(self) -> int:
        return sum(c.bit_count() for c in self.conflict) // 2

    def other(self, i: int, p: int) -> int:
        a, b = self.segments[i]
        return b if a == p else a

    def with_flipped(self, i: int, j: int) -> "EdgeCatalog":
        """Copy with the crossing bit between segments i and j toggled (fault injection)."""
        conflict = list(self.conflict)
        conflict[i] ^= 1 << j
        conflict[j] ^= 1 << i
        return EdgeCatalog(self.points, conflict)

    def graph(self, edges=()) -> "GeoGraph":
        """GeoGraph from an int bitset or an iterable of (p, q) pairs."""
        if isinstance(edges, int):
            return GeoGraph(self, edges)
        mask = 0
        for p, q in edges:
            mask |= 1 << self.seg(p, q)
        return GeoGraph(self, mask)


@dataclass(frozen=True)
class GeoGraph:
    catalog: EdgeCatalog = field(compare=False, repr=False)
    edges: int

    @property
    def m(self) -> int:
        return self.edges.bit_count()

    @property
    def N(self) -> int:
        return self.catalog.N

    def segments(self) -> list[Segment]:
        segs = self.catalog.segments
        out = []
        E = self.edges
        while E:
            low = E & -E
            out.append(segs[low.bit_length() - 1])
            E ^= low
        return out

    def has(self, p: int, q: int) -> bool:
        return bool((self.edges >> self.catalog.seg(p, q)) & 1)

    def degree(self, p: int) -> int:
        return (self.edges & self.catalog.inc[p]).bit_count()

    def degrees(self) -> list[int]:
        return [(self.edges & im).bit_count() for im in self.catalog.inc]

    def neighbors(self, p: int) -> list[int]:
        cat = self.catalog
        return sorted(cat.other(s, p) for s in cat.seg_at[p] if (self.edges >> s) & 1)

    def add(self, *pairs) -> "GeoGraph":
        mask = self.edges
        for p, q in pairs:
            mask |= 1 << self.catalog.seg(p, q)
        return GeoGraph(self.catalog, mask)

    def remove(self, *pairs) -> "GeoGraph":
        mask = self.edges
        for p, q in pairs:
            mask &= ~(1 << self.catalog.seg(p, q))
        return GeoGraph(self.catalog, mask)

    def is_plane(self) -> bool:
        return self.max_crossing_clique(2) < 2

    def is_quasi_plane(self, k: int) -> bool:
        """No k pairwise-crossing edges (k=2 is the plane case)."""
        return not kernels.has_clique(self.catalog.conflict, self.edges, k)

    def max_crossing_clique(self, limit: int) -> int:
        r = 0
        while r < limit and kernels.has_clique(self.catalog.conflict, self.edges, r + 1):
            r += 1
        return r


@dataclass(frozen=True)
class CensusFilter:
    min_degree: int = 0
    max_edges: Optional[int] = None

    def __post_init__(self):
        if self.min_degree < 0:
            raise ValueError("min_degree must be >= 0")
        if self.max_edges is not None and self.max_edges < 0:
            raise ValueError("max_edges must be >= 0")

    @property
    def trivial(self) -> bool:
        return self.min_degree == 0 and self.max_edges is None

    def admits(self, G: GeoGraph) -> bool:
        if self.max_edges is not None and G.m > self.max_edges:
            return False
        return all(d >= self.min_degree for d in G.degrees())

    @classmethod
    def with_c(cls, c, N: int, min_degree: int = 0) -> "CensusFilter":
        """Graphs with at most floor(c*N) edges."""
        from fractions import Fraction
        return cls(min_degree, int(Fraction(str(c)) * N))


NO_FILTER = CensusFilter()


@dataclass
class ScanSummary:
    """Merged kernel output for one class/filter over one catalog."""

    count: int
    nodes: int
    hist: list[int]
    vx: int
    vx_at: list[int]
    edge_sum: int
    max_m: int
    masks: Optional[list[int]] = None


def build_catalog(S: PointSet) -> EdgeCatalog:
    if not validate_general_position(S):
        raise RejectedPointSet("point set is not in general position")
    return EdgeCatalog(S)


def as_catalog(S) -> EdgeCatalog:
    return S if isinstance(S, EdgeCatalog) else build_catalog(S)


def _prefixes(cat: EdgeCatalog, k: int, bits: int, max_edges: int) -> list[int]:
    """Valid assignments of the top ``bits`` segments, in increasing order."""
    top = cat.nseg - bits
    out = []
    for v in range(1 << bits):
        mask = v << top
        if mask.bit_count() > max_edges:
            continue
        ok = True
        cur = 0
        W = mask
        while W and ok:
            low = W & -W
            W ^= low
            ok = kernels.addable(cat.conflict, low.bit_length() - 1, cur, k)
            cur |= low
        if ok:
            out.append(mask)
    return out


def _scan_task(args):
    return kernels.scan(*args)


def census_scan(S, k: int = 2, filt: CensusFilter = NO_FILTER, budget: int = DEFAULT_BUDGET,
                workers: int = 1, collect: bool = False, backend: Optional[str] = None) -> ScanSummary:
    """Run the census kernel over every k-quasi-plane graph admitted by ``filt``.

    The search tree is split on the top segments into independent subtrees;
    results are concatenated in subtree order so the output does not
    depend on ``workers``.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    cat = as_catalog(S)
    nseg = cat.nseg
    max_edges = nseg if filt.max_edges is None else filt.max_edges
    bits = min(SPLIT_BITS, nseg)
    prefixes = _prefixes(cat, k, bits, max_edges)
    jobs = [(cat.conflict, cat.inc, cat.seg_at, k, filt.min_degree, max_edges, bits, pv,
             budget, collect, backend) for pv in prefixes]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_task, jobs))
    else:
        parts = []
        used = 0
        for job in jobs:
            part = _scan_task(job)
            used += part[1]
            if used > budget:
                raise BudgetExceeded(budget, used)
            parts.append(part)
    hist = [0] * max(cat.N, 1)
    out = ScanSummary(0, 1 << bits, hist, 0, [0] * cat.N, 0, -1, [] if collect else None)
    for count, nodes, h, vx, vx_at, esum, max_m, masks in parts:
        out.count += count
        out.nodes += nodes
        for i, c in enumerate(h):
            hist[i] += c
        out.vx += vx
        for p, c in enumerate(vx_at):
            out.vx_at[p] += c
        out.edge_sum += esum
        out.max_m = max(out.max_m, max_m)
        if collect:
            out.masks.extend(masks)
    if out.nodes > budget:
        raise BudgetExceeded(budget, out.nodes)
    return out


def enumerate_plane(S, filt: CensusFilter = NO_FILTER, budget: int = DEFAULT_BUDGET,
                    workers: int = 1) -> Iterator[GeoGraph]:
    cat = as_catalog(S)
    summary = census_scan(cat, 2, filt, budget, workers, collect=True)
    return (GeoGraph(cat, mask) for mask in summary.masks)


def enumerate_qp(S, k: int, filt: CensusFilter = NO_FILTER, budget: int = DEFAULT_BUDGET,
                 workers: int = 1) -> Iterator[GeoGraph]:
    if k not in (2, 3, 4):
        raise ValueError("quasi-plane enumeration supports k in {2, 3, 4}")
    cat = as_catalog(S)
    summary = census_scan(cat, k, filt, budget, workers, collect=True)
    return (GeoGraph(cat, mask) for mask in summary.masks)


def count_plane(S, filt: CensusFilter = NO_FILTER, budget: int = DEFAULT_BUDGET,
                workers: int = 1) -> int:
    """Exact number of plane graphs admitted by ``filt``.

    Unfiltered counts use the memoized independent-set recurrence on the
    crossing graph; filtered counts fall back to the enumeration kernel.
    """
    cat = as_catalog(S)
    if filt.trivial:
        return kernels.count_independent(cat.conflict, (1 << cat.nseg) - 1, budget)
    return census_scan(cat, 2, filt, budget, workers).count


def count_class(S, cls: str, filt: CensusFilter = NO_FILTER, budget: int = DEFAULT_BUDGET,
                workers: int = 1) -> int:
    """Count for a class selector: ``plane``, ``tri``, ``qp3`` or ``qp4``."""
    if cls == "plane":
        return count_plane(S, filt, budget, workers)
    if cls == "tri":
        return sum(1 for G in enumerate_triangulations(S, budget, workers) if filt.admits(G))
    return census_scan(S, class_k(cls), filt, budget, workers).count


def class_k(cls: str) -> int:
    try:
        return {"plane": 2, "qp2": 2, "qp3": 3, "qp4": 4}[cls]
    except KeyError:
        raise ValueError(f"unknown graph class {cls!r}") from None


def is_maximal(cat: EdgeCatalog, mask: int, k: int = 2) -> bool:
    rest = ((1 << cat.nseg) - 1) & ~mask
    while rest:
        low = rest & -rest
        rest ^= low
        if kernels.addable(cat.conflict, low.bit_length() - 1, mask, k):
            return False
    return True


def enumerate_triangulations(S, budget: int = DEFAULT_BUDGET, workers: int = 1) -> Iterator[GeoGraph]:
    """Edge-maximal plane graphs, in increasing bitset order."""
    cat = as_catalog(S)
    # segments crossing nothing belong to every triangulation
    forced = 0
    for i, c in enumerate(cat.conflict):
        if c == 0:
            forced |= 1 << i
    summary = census_scan(cat, 2, NO_FILTER, budget, workers, collect=True)
    for mask in summary.masks:
        if mask & forced == forced and is_maximal(cat, mask):
            yield GeoGraph(cat, mask)


@dataclass(frozen=True)
class MaxEdgesReport:
    observed: int
    known_bound: Optional[float]
    vacuous: bool
    holds: bool


def max_edges_in_class(S, k: int = 2, budget: int = DEFAULT_BUDGET, workers: int = 1) -> MaxEdgesReport:
    """Observed maximum edge count in the class, with the known linear bound.

    Bounds: 3N-6 (plane), 6.5N-20 (k=3), 36N-72 (k=4). A bound is vacuous
    when it is at least the number of candidate segments.
    """
    cat = as_catalog(S)
    N = cat.N
    observed = census_scan(cat, k, NO_FILTER, budget, workers).max_m
    bound = {2: 3 * N - 6, 3: 6.5 * N - 20, 4: 36 * N - 72}.get(k)
    vacuous = bound is None or bound >= cat.nseg
    holds = bound is None or observed <= bound
    return MaxEdgesReport(observed, bound, vacuous, holds)


def subset_catalogs(S: PointSet) -> list[EdgeCatalog]:
    """Catalogs of S minus each point, in label order."""
    return [build_catalog(S.without(q)) for q in range(S.N)]


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))
