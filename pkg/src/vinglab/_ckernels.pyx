# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel for catalogs with at most 64 segments.

Same contract as ``vinglab._pykernels.scan``; edge sets are uint64 masks.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from .errors import BudgetExceeded

DEF MAXSEG = 64
DEF MAXPTS = 64


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef struct Ctx:
    int nseg
    int npts
    int k
    int min_degree
    int max_edges
    long long budget
    long long nodes
    long long count
    long long vx
    long long esum
    int max_m
    int overflow
    uint64_t conflict[MAXSEG]
    uint64_t inc[MAXPTS]
    long long hist[MAXPTS]
    long long vx_at[MAXPTS]


cdef bint has_clique(Ctx* c, uint64_t X, int r) nogil:
    cdef uint64_t low
    cdef int j
    if r <= 0:
        return True
    if r == 1:
        return X != 0
    while X:
        low = X & (~X + 1)
        j = __builtin_ctzll(X)
        X ^= low
        if has_clique(c, c.conflict[j] & X, r - 1):
            return True
    return False


cdef inline bint addable(Ctx* c, int s, uint64_t edges) nogil:
    return not has_clique(c, c.conflict[s] & edges, c.k - 1)


cdef int x_count(Ctx* c, uint64_t cur) nogil:
    cdef int p, s, vx = 0
    cdef uint64_t free_at
    for p in range(c.npts):
        free_at = c.inc[p] & ~cur
        while free_at:
            s = __builtin_ctzll(free_at)
            free_at &= free_at - 1
            if addable(c, s, cur):
                break
        else:
            vx += 1
            c.vx_at[p] += 1
    return vx


cdef int rec(Ctx* c, int i, uint64_t cur, int m, list masks) except -1:
    cdef int p
    c.nodes += 1
    if c.nodes > c.budget:
        c.overflow = 1
        return 0
    if i < 0:
        if c.min_degree:
            for p in range(c.npts):
                if __builtin_popcountll(cur & c.inc[p]) < c.min_degree:
                    return 0
        c.count += 1
        for p in range(c.npts):
            c.hist[__builtin_popcountll(cur & c.inc[p])] += 1
        c.vx += x_count(c, cur)
        c.esum += m
        if m > c.max_m:
            c.max_m = m
        if masks is not None:
            masks.append(cur)
        return 0
    rec(c, i - 1, cur, m, masks)
    if c.overflow:
        return 0
    if m < c.max_edges and addable(c, i, cur):
        rec(c, i - 1, cur | ((<uint64_t>1) << i), m + 1, masks)
    return 0


def scan(conflict, inc, seg_at, int k, int min_degree, max_edges, int prefix_bits,
         prefix_value, long long budget, bint collect):
    cdef int nseg = len(conflict)
    cdef int npts = len(inc)
    cdef int i
    cdef uint64_t start
    cdef Ctx* c
    if nseg > MAXSEG or npts > MAXPTS:
        raise ValueError("compiled kernel supports at most 64 segments")
    c = <Ctx*>malloc(sizeof(Ctx))
    if c == NULL:
        raise MemoryError()
    try:
        c.nseg = nseg
        c.npts = npts
        c.k = k
        c.min_degree = min_degree
        c.max_edges = nseg if (max_edges is None or max_edges < 0) else max_edges
        c.budget = budget
        c.nodes = 0
        c.count = 0
        c.vx = 0
        c.esum = 0
        c.max_m = -1
        c.overflow = 0
        for i in range(nseg):
            c.conflict[i] = conflict[i]
        for i in range(npts):
            c.inc[i] = inc[i]
            c.hist[i] = 0
            c.vx_at[i] = 0
        masks = [] if collect else None
        start = prefix_value
        m0 = __builtin_popcountll(start)
        if m0 <= c.max_edges:
            rec(c, nseg - prefix_bits - 1, start, m0, masks)
        if c.overflow:
            raise BudgetExceeded(budget, c.nodes)
        hist = [c.hist[i] for i in range(max(npts, 1))] if npts else [0]
        vx_at = [c.vx_at[i] for i in range(npts)]
        return c.count, c.nodes, hist, c.vx, vx_at, c.esum, c.max_m, masks
    finally:
        free(c)
