"""Vertex-in-graph ("ving") analytics: x-vings, completion, and reductions.

Modes: ``plane`` (k=2), ``qp3`` and ``qp4`` (no 3 / 4 pairwise-crossing edges).
Reductions to degree-3 and degree-4 x-vings are defined for plane mode only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from . import kernels
from .census import GeoGraph
from .errors import DegenerateDiagonal, NotInside, NotReducible
from .geom import angular_order, in_triangle, orient, segments_cross, triangle_containing

MODES = {"plane": 2, "qp2": 2, "qp3": 3, "qp4": 4}


def mode_k(mode: str) -> int:
    try:
        return MODES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}") from None


@dataclass(frozen=True)
class Ving:
    vertex: int
    graph: GeoGraph

    @property
    def degree(self) -> int:
        return self.graph.degree(self.vertex)

    @property
    def key(self) -> tuple[int, int]:
        return (self.graph.edges, self.vertex)


@dataclass(frozen=True)
class VingProfile:
    degree: int
    is_x: bool
    mode: str


@dataclass(frozen=True)
class VingHistogram:
    v: tuple[int, ...]
    vx: int

    @property
    def N(self) -> int:
        return sum(self.v)

    def degree_sum(self) -> int:
        return sum(i * c for i, c in enumerate(self.v))


def addable_edges(v: Ving, mode: str = "plane") -> int:
    """Bitset of segments at the vertex that can be inserted individually."""
    G, p = v.graph, v.vertex
    cat = G.catalog
    k = mode_k(mode)
    out = 0
    for s in cat.seg_at[p]:
        if not (G.edges >> s) & 1 and kernels.addable(cat.conflict, s, G.edges, k):
            out |= 1 << s
    return out


def is_x_ving(v: Ving, mode: str = "plane") -> bool:
    return addable_edges(v, mode) == 0


def profile(v: Ving, mode: str = "plane") -> VingProfile:
    return VingProfile(v.degree, is_x_ving(v, mode), mode)


def x_completion(v: Ving, mode: str = "plane") -> Ving:
    """The unique x-ving obtained by connecting the vertex to everything it can reach.

    Addable segments all share the vertex, so none of them crosses another
    and a violating k-set contains at most one of them; inserting them all
    at once is therefore safe in every mode.
    """
    add = addable_edges(v, mode)
    if not add:
        return v
    return Ving(v.vertex, GeoGraph(v.graph.catalog, v.graph.edges | add))


def strip_vertex(v: Ving) -> Ving:
    G = v.graph
    return Ving(v.vertex, GeoGraph(G.catalog, G.edges & ~G.catalog.inc[v.vertex]))


def predecessors(x: Ving) -> Iterator[Ving]:
    """All 2^d vings obtained by deleting a subset of the vertex's edges."""
    G, p = x.graph, x.vertex
    own = G.edges & G.catalog.inc[p]
    bits = []
    W = own
    while W:
        low = W & -W
        bits.append(low)
        W ^= low
    base = G.edges & ~own
    for sel in range(1 << len(bits)):
        keep = 0
        for j, b in enumerate(bits):
            if (sel >> j) & 1:
                keep |= b
        yield Ving(p, GeoGraph(G.catalog, base | keep))


def histogram(G: GeoGraph, mode: str = "plane") -> VingHistogram:
    cat = G.catalog
    v = [0] * max(cat.N, 1)
    for d in G.degrees():
        v[d] += 1
    vx = kernels.x_count(cat.conflict, cat.seg_at, G.edges, mode_k(mode))
    return VingHistogram(tuple(v), vx)


@dataclass(frozen=True)
class CensusStats:
    """Exact per-degree and x-ving averages over one census."""

    N: int
    count: int
    v_sum: tuple[int, ...]
    vx_sum: int

    def v_hat(self, i: int) -> Fraction:
        if i >= len(self.v_sum):
            return Fraction(0)
        return Fraction(self.v_sum[i], self.count)

    @property
    def vx_hat(self) -> Fraction:
        return Fraction(self.vx_sum, self.count)


def aggregate(graphs: Iterable[GeoGraph], mode: str = "plane") -> CensusStats:
    """Merge ving histograms over a census stream."""
    total = None
    vx = 0
    count = 0
    N = 0
    for G in graphs:
        h = histogram(G, mode)
        if total is None:
            N = G.N
            total = [0] * len(h.v)
        for i, c in enumerate(h.v):
            total[i] += c
        vx += h.vx
        count += 1
    return CensusStats(N, count, tuple(total or ()), vx)


# ---------------------------------------------------------------------------
# reductions (plane mode)


def ear_clip(poly: list[int], S, first_choice: int = 0) -> list[tuple[int, int, int]]:
    """Triangulate a simple CCW polygon by ear clipping.

    At every step the ear with the smallest apex label is cut, except that
    the very first cut uses the ``first_choice``-th valid ear.
    """
    pts = S.points
    ring = list(poly)
    tris = []
    choice = first_choice
    while len(ring) > 3:
        ears = []
        n = len(ring)
        for idx in range(n):
            a, b, c = ring[idx - 1], ring[idx], ring[(idx + 1) % n]
            if orient(pts[a], pts[b], pts[c]) <= 0:
                continue
            if any(in_triangle(pts[q], pts[a], pts[b], pts[c], strict=False)
                   for q in ring if q not in (a, b, c)):
                continue
            ears.append((b, idx))
        if not ears:
            raise NotReducible("polygon has no ear; it is not simple and counterclockwise")
        ears.sort()
        b, idx = ears[min(choice, len(ears) - 1)]
        choice = 0
        tris.append((ring[idx - 1], b, ring[(idx + 1) % len(ring)]))
        del ring[idx]
    tris.append(tuple(ring))
    return tris


@dataclass(frozen=True)
class ReductionFrame:
    """The star polygon around an x-ving, its canonical triangulation and the triangle holding the vertex."""

    polygon: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    delta: tuple[int, int, int]


def _tri_edges(t):
    a, b, c = t
    return ((a, b), (b, c), (c, a))


def _same_edge(e, f):
    return {e[0], e[1]} == {f[0], f[1]}


def reduction_frame(x: Ving) -> ReductionFrame:
    G, p = x.graph, x.vertex
    S = G.catalog.points
    nbrs = G.neighbors(p)
    if len(nbrs) < 4:
        raise NotReducible(f"reduction needs an x-ving of degree >= 4, got {len(nbrs)}")
    if not is_x_ving(x):
        raise NotReducible("reduction needs an x-ving")
    poly = angular_order(p, nbrs, S)
    pts = S.points
    n = len(poly)
    if any(orient(pts[p], pts[poly[i]], pts[poly[(i + 1) % n]]) <= 0 for i in range(n)):
        raise NotReducible(f"vertex {p} is not inside its neighbour polygon (hull x-ving)")
    last_err = None
    for attempt in range(len(poly)):
        tris = ear_clip(poly, S, attempt)
        # every diagonal must avoid the vertex; general position makes this automatic
        diag_hit = False
        for t in tris:
            for u, w in _tri_edges(t):
                if orient(pts[u], pts[w], pts[p]) == 0:
                    diag_hit = True
        if diag_hit:
            last_err = DegenerateDiagonal(f"vertex {p} lies on a diagonal")
            continue
        try:
            delta = triangle_containing(p, tris, S)
        except NotInside:
            raise NotReducible(
                f"vertex {p} is not inside its neighbour polygon (hull x-ving)") from None
        return ReductionFrame(tuple(poly), tuple(tris), delta)
    raise last_err


def reduce_to_x3(x: Ving) -> Ving:
    """Replace the vertex's star by the triangle of its polygon that contains it."""
    frame = reduction_frame(x)
    G, p = x.graph, x.vertex
    cat = G.catalog
    a, b, c = frame.delta
    H = GeoGraph(cat, G.edges & ~cat.inc[p]).add((a, b), (b, c), (c, a), (p, a), (p, b), (p, c))
    return Ving(p, H)


def adjacent_triangles(frame: ReductionFrame):
    """(triangle, shared edge, opposite vertex) for triangles sharing an edge with delta."""
    out = []
    for t in frame.triangles:
        if set(t) == set(frame.delta):
            continue
        for e in _tri_edges(frame.delta):
            if e[0] in t and e[1] in t:
                r = next(v for v in t if v not in e)
                out.append((t, e, r))
    return out


def reduce_to_x4(x3: Ving, source: Ving) -> Ving:
    """Grow the containing triangle by an adjacent triangle of the source polygon.

    The adjacent triangle is the one with the smallest opposite label among
    those whose opposite vertex is visible from the vertex across the shared
    edge.
    """
    frame = reduction_frame(source)
    H, p = x3.graph, x3.vertex
    cat = H.catalog
    pts = cat.points.points
    if set(H.neighbors(p)) != set(frame.delta):
        raise NotReducible("x3 ving is not the reduction of the given source")
    candidates = []
    for t, e, r in adjacent_triangles(frame):
        if segments_cross(pts[p], pts[r], pts[e[0]], pts[e[1]]):
            candidates.append((r, t, e))
    if not candidates:
        raise NotReducible("no adjacent triangle is visible across its shared edge")
    candidates.sort()
    r, t, e = candidates[0]
    H2 = H.add(*_tri_edges(t)).remove(e).add((p, r))
    return Ving(p, H2)


def quad_diagonal_ok(q: list[int], i: int, pts) -> bool:
    """Is q[i]q[i+2] an interior diagonal of the simple quadrilateral q?"""
    a, c = pts[q[i]], pts[q[(i + 2) % 4]]
    o1 = orient(a, c, pts[q[(i + 1) % 4]])
    o2 = orient(a, c, pts[q[(i + 3) % 4]])
    return o1 * o2 < 0


def x4_predecessors(x4: Ving) -> list[Ving]:
    """Degree-3 x-vings that the degree-4 growing step can turn into ``x4``.

    For each interior diagonal d of the neighbour quadrilateral, the vertex
    sits in one half (delta) and the far half has apex r with edges e, e'.
    A predecessor restores d, drops the edge to r, and optionally drops e
    and e'; it is kept when it is a plane graph in which the vertex is a
    degree-3 x-ving whose triangle edges are all present.
    """
    G, p = x4.graph, x4.vertex
    cat = G.catalog
    pts = cat.points.points
    nbrs = G.neighbors(p)
    if len(nbrs) != 4 or not is_x_ving(x4):
        raise NotReducible("x4_predecessors needs a degree-4 x-ving")
    q = angular_order(p, nbrs, cat.points)
    if not all(G.has(q[i], q[(i + 1) % 4]) for i in range(4)):
        return []
    out = []
    for i in (0, 1):
        if not quad_diagonal_ok(q, i, pts):
            continue
        d = (q[i], q[i + 2])
        side1, side2 = q[i + 1], q[(i + 3) % 4]
        if in_triangle(pts[p], pts[d[0]], pts[d[1]], pts[side1]):
            s, r = side1, side2
        else:
            s, r = side2, side1
        e, e2 = (d[0], r), (d[1], r)
        base = G.remove((p, r))
        if not kernels.addable(cat.conflict, cat.seg(*d), base.edges, 2):
            continue
        base = base.add(d)
        for drop in ((), (e,), (e2,), (e, e2)):
            H = base.remove(*drop)
            cand = Ving(p, H)
            if (H.is_plane() and is_x_ving(cand) and cand.degree == 3
                    and H.has(d[0], d[1]) and H.has(d[0], s) and H.has(d[1], s)):
                out.append(cand)
    return out


def x4_predecessor_count(x4: Ving) -> int:
    return len(x4_predecessors(x4))


def is_hull_vertex(S, p: int) -> bool:
    from .geom import convex_hull
    return p in convex_hull(S)


def hull_neighbors(S, p: int) -> Optional[tuple[int, int]]:
    from .geom import convex_hull
    hull = convex_hull(S)
    if p not in hull:
        return None
    i = hull.index(p)
    return hull[i - 1], hull[(i + 1) % len(hull)]
