"""Exact integer geometric predicates over labeled point sets.

All arithmetic is on Python integers; coordinates are capped at
``COORD_LIMIT`` so every determinant stays well inside 96 bits.
"""

from __future__ import annotations

from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import NotInside, RejectedPointSet

COORD_LIMIT = 1 << 20


class Point(NamedTuple):
    label: int
    x: int
    y: int


class Segment(NamedTuple):
    a: int
    b: int

    @classmethod
    def of(cls, p: int, q: int) -> "Segment":
        if p == q:
            raise ValueError("segment endpoints must differ")
        return cls(p, q) if p < q else cls(q, p)


class PointSet:
    """Ordered, labeled point set with integer coordinates.

    Construction only checks the coordinate bound; use
    :func:`validate_general_position` (or :meth:`require_general_position`)
    for the distinctness / no-three-collinear invariant.
    """

    __slots__ = ("points",)

    def __init__(self, coords: Iterable[Sequence[int]]):
        pts = []
        for i, c in enumerate(coords):
            x, y = int(c[0]), int(c[1])
            if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
                raise RejectedPointSet(f"point {i} = ({x}, {y}) exceeds |coord| <= 2^20")
            pts.append(Point(i, x, y))
        self.points = tuple(pts)

    @property
    def N(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def coords(self) -> list[tuple[int, int]]:
        return [(p.x, p.y) for p in self.points]

    def without(self, q: int) -> "PointSet":
        """Point set with point ``q`` removed (labels are renumbered)."""
        return PointSet([(p.x, p.y) for p in self.points if p.label != q])

    def require_general_position(self) -> "PointSet":
        if not validate_general_position(self):
            raise RejectedPointSet("point set is not in general position")
        return self

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.coords() == other.coords()

    def __hash__(self):
        return hash(tuple(self.coords()))

    def __repr__(self):
        return f"PointSet({self.coords()!r})"


def orient(p, q, r) -> int:
    """Sign of det(q - p, r - p); +1 for a counterclockwise turn."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def segments_cross(p1, p2, p3, p4) -> bool:
    """True iff open segments p1p2 and p3p4 intersect in a single interior point.

    Segments sharing an endpoint never cross. Collinear overlaps are
    reported as non-crossing; they cannot occur in general position.
    """
    if p1 == p3 or p1 == p4 or p2 == p3 or p2 == p4:
        return False
    o1 = orient(p1, p2, p3)
    o2 = orient(p1, p2, p4)
    o3 = orient(p3, p4, p1)
    o4 = orient(p3, p4, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def proper_cross(s1: Segment, s2: Segment, S: PointSet) -> bool:
    if s1.a in (s2.a, s2.b) or s1.b in (s2.a, s2.b):
        return False
    pts = S.points
    return segments_cross(pts[s1.a], pts[s1.b], pts[s2.a], pts[s2.b])


def validate_general_position(S: PointSet) -> bool:
    pts = S.points
    if len({(p.x, p.y) for p in pts}) != len(pts):
        return False
    for p, q, r in combinations(pts, 3):
        if orient(p, q, r) == 0:
            return False
    return True


def sees(p: int, q: int, G) -> bool:
    """True iff segment pq properly crosses no edge of the plane graph G."""
    pts = G.catalog.points.points
    a, b = pts[p], pts[q]
    for u, v in G.segments():
        if u in (p, q) or v in (p, q):
            continue
        if segments_cross(a, b, pts[u], pts[v]):
            return False
    return True


def _half(dx: int, dy: int) -> int:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def angular_order(p: int, V: Iterable[int], S: PointSet) -> list[int]:
    """Vertices of V in counterclockwise order around p, starting at the smallest label."""
    V = list(V)
    if p in V:
        raise ValueError("center vertex must not be in V")
    c = S.points[p]

    def key_cmp(i, j):
        a, b = S.points[i], S.points[j]
        ax, ay, bx, by = a.x - c.x, a.y - c.y, b.x - c.x, b.y - c.y
        ha, hb = _half(ax, ay), _half(bx, by)
        if ha != hb:
            return ha - hb
        cr = ax * by - ay * bx
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    ordered = sorted(V, key=cmp_to_key(key_cmp))
    if not ordered:
        return ordered
    start = ordered.index(min(ordered))
    return ordered[start:] + ordered[:start]


def in_triangle(p, a, b, c, strict: bool = True) -> bool:
    """Point-in-triangle via three orientation tests (either winding)."""
    o1, o2, o3 = orient(a, b, p), orient(b, c, p), orient(c, a, p)
    if strict:
        return (o1 > 0 and o2 > 0 and o3 > 0) or (o1 < 0 and o2 < 0 and o3 < 0)
    has_neg = o1 < 0 or o2 < 0 or o3 < 0
    has_pos = o1 > 0 or o2 > 0 or o3 > 0
    return not (has_neg and has_pos)


def triangle_containing(p: int, T: Sequence[tuple[int, int, int]], S: PointSet) -> tuple[int, int, int]:
    pts = S.points
    hits = [t for t in T if in_triangle(pts[p], pts[t[0]], pts[t[1]], pts[t[2]], strict=False)]
    if not hits:
        raise NotInside(f"vertex {p} lies in no triangle")
    return hits[0]


def convex_hull(S: PointSet) -> list[int]:
    """Labels of hull vertices in counterclockwise order (monotone chain)."""
    pts = sorted(S.points, key=lambda q: (q.x, q.y))
    if len(pts) <= 2:
        return [q.label for q in pts]

    def chain(seq):
        out = []
        for q in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], q) <= 0:
                out.pop()
            out.append(q)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return [q.label for q in lower[:-1] + upper[:-1]]
