"""Pure-Python census kernel; reference backend and fallback for the C extension.

Edge sets are Python ints used as bitsets over catalog segment indices.
"""

from __future__ import annotations

import sys

from .errors import BudgetExceeded


def has_clique(conflict, X: int, r: int) -> bool:
    """True iff the segments in bitset X contain r pairwise-crossing members."""
    if r <= 0:
        return True
    if r == 1:
        return X != 0
    while X:
        low = X & -X
        j = low.bit_length() - 1
        X ^= low
        if has_clique(conflict, conflict[j] & X, r - 1):
            return True
    return False


def addable(conflict, s: int, edges: int, k: int) -> bool:
    """Can segment s join ``edges`` without creating k pairwise-crossing segments?"""
    return not has_clique(conflict, conflict[s] & edges, k - 1)


def x_vertices(conflict, seg_at, edges: int, k: int) -> list[int]:
    """Vertices whose degree cannot be raised within the class."""
    out = []
    for p, segs in enumerate(seg_at):
        for s in segs:
            if not (edges >> s) & 1 and addable(conflict, s, edges, k):
                break
        else:
            out.append(p)
    return out


def x_count(conflict, seg_at, edges: int, k: int) -> int:
    return len(x_vertices(conflict, seg_at, edges, k))


def scan(conflict, inc, seg_at, k, min_degree, max_edges, prefix_bits, prefix_value,
         budget, collect):
    """Enumerate every k-quasi-plane edge set and accumulate census statistics.

    The top ``prefix_bits`` segment indices are pinned to ``prefix_value``;
    the rest are decided from high index to low, exclusion first, so edge
    sets come out in increasing integer order. Returns
    ``(count, nodes, hist, vx_sum, vx_at, edge_sum, max_m, masks)`` where
    ``hist[d]`` sums the number of degree-d vertices over the yielded graphs
    and ``vx_at[p]`` counts the graphs in which p is an x-ving.
    """
    nseg = len(conflict)
    npts = len(inc)
    hist = [0] * max(npts, 1)
    vx_at = [0] * npts
    masks = [] if collect else None
    state = [0, 0, 0, 0, -1]  # count, nodes, vx_sum, edge_sum, max_m
    if max_edges is None or max_edges < 0:
        max_edges = nseg

    def leaf(cur, m):
        if min_degree:
            for im in inc:
                if (cur & im).bit_count() < min_degree:
                    return
        state[0] += 1
        for im in inc:
            hist[(cur & im).bit_count()] += 1
        xs = x_vertices(conflict, seg_at, cur, k)
        for p in xs:
            vx_at[p] += 1
        state[2] += len(xs)
        state[3] += m
        if m > state[4]:
            state[4] = m
        if collect:
            masks.append(cur)

    def rec(i, cur, m):
        state[1] += 1
        if state[1] > budget:
            raise BudgetExceeded(budget, state[1])
        if i < 0:
            leaf(cur, m)
            return
        rec(i - 1, cur, m)
        if m < max_edges and addable(conflict, i, cur, k):
            rec(i - 1, cur | (1 << i), m + 1)

    start_m = prefix_value.bit_count()
    if start_m <= max_edges:
        limit = sys.getrecursionlimit()
        if limit < nseg + 100:
            sys.setrecursionlimit(nseg + 100)
        rec(nseg - prefix_bits - 1, prefix_value, start_m)
    count, nodes, vx, esum, max_m = state
    return count, nodes, hist, vx, vx_at, esum, max_m, masks


def count_independent(conflict, V: int, budget: int) -> int:
    """Number of independent sets of the crossing graph restricted to bitset V.

    Branches on a maximum-degree vertex, count(V) = count(V - v) +
    count(V - N[v]), multiplying across connected components, memoized.
    """
    memo: dict[int, int] = {}
    calls = [0]

    def component(V, seed):
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = conflict[low.bit_length() - 1] & V & ~comp
            comp |= nb
            frontier |= nb
        return comp

    def rec(V):
        if V == 0:
            return 1
        hit = memo.get(V)
        if hit is not None:
            return hit
        calls[0] += 1
        if calls[0] > budget:
            raise BudgetExceeded(budget, calls[0])
        comp = component(V, V & -V)
        if comp != V:
            res = rec(comp) * rec(V & ~comp)
        else:
            best, best_deg = -1, -1
            W = V
            while W:
                low = W & -W
                W ^= low
                j = low.bit_length() - 1
                d = (conflict[j] & V).bit_count()
                if d > best_deg:
                    best, best_deg = j, d
            if best_deg == 0:
                res = 1 << V.bit_count()
            else:
                rest = V & ~(1 << best)
                res = rec(rest) + rec(rest & ~conflict[best])
        memo[V] = res
        return res

    limit = sys.getrecursionlimit()
    if limit < 4 * len(conflict) + 100:
        sys.setrecursionlimit(4 * len(conflict) + 100)
    return rec(V)
