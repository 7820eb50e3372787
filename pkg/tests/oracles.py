"""Brute-force references, deliberately independent of the kernels."""

from itertools import combinations

from vinglab.geom import Segment, proper_cross


def segments(n):
    return [Segment(a, b) for a, b in combinations(range(n), 2)]


def crossing_pairs(S):
    segs = segments(S.N)
    return {(i, j) for i, j in combinations(range(len(segs)), 2)
            if proper_cross(segs[i], segs[j], S)}


def subsets(n):
    for mask in range(1 << n):
        yield [i for i in range(n) if mask >> i & 1]


def is_k_free(chosen, cross, k):
    """No k chosen segments pairwise cross."""
    for group in combinations(chosen, k):
        if all((a, b) in cross for a, b in combinations(sorted(group), 2)):
            return False
    return True


def class_members(S, k=2):
    """Edge index lists of every k-quasi-plane graph on S."""
    cross = crossing_pairs(S)
    m = len(segments(S.N))
    return [c for c in subsets(m) if is_k_free(c, cross, k)]


def maximal_plane(S):
    cross = crossing_pairs(S)
    m = len(segments(S.N))
    members = [set(c) for c in class_members(S)]
    out = []
    for c in members:
        if all(not is_k_free(sorted(c | {s}), cross, 2) for s in range(m) if s not in c):
            out.append(c)
    return out


def degrees(S, chosen):
    segs = segments(S.N)
    deg = [0] * S.N
    for i in chosen:
        a, b = segs[i]
        deg[a] += 1
        deg[b] += 1
    return deg
