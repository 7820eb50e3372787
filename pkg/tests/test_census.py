from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from conftest import CONVEX4, TRIANGLE
from oracles import class_members, crossing_pairs, degrees, maximal_plane
from vinglab.census import (CensusFilter, GeoGraph, build_catalog, census_scan, count_class,
                            count_plane, enumerate_plane, enumerate_qp, enumerate_triangulations,
                            is_maximal, max_edges_in_class)
from vinglab.errors import BudgetExceeded
from vinglab.geom import PointSet, convex_hull
from vinglab.io import generate

CATALAN = [1, 1, 2, 5, 14, 42, 132]


def masks_of(graphs):
    return [G.edges for G in graphs]


def oracle_masks(S, k=2):
    return sorted(sum(1 << i for i in c) for c in class_members(S, k))


def test_catalog_sizes():
    assert build_catalog(TRIANGLE).nseg == 3
    assert build_catalog(TRIANGLE).crossing_pairs() == 0
    c4 = build_catalog(CONVEX4)
    assert (c4.nseg, c4.crossing_pairs()) == (6, 1)
    c5 = build_catalog(generate("convex", 5, 0))
    assert (c5.nseg, c5.crossing_pairs()) == (10, 5)


@pytest.mark.parametrize("seed", range(6))
def test_catalog_matches_oracle(seed):
    S = generate("random", 6, seed)
    cat = build_catalog(S)
    got = {(i, j) for i in range(cat.nseg) for j in range(i + 1, cat.nseg) if cat.crosses(i, j)}
    assert got == crossing_pairs(S)


def test_plane_small_counts():
    assert count_plane(TRIANGLE) == 8
    assert count_plane(CONVEX4) == 48 == 2**6 - 2**4
    assert len(list(enumerate_plane(CONVEX4))) == 48


def test_convex_plane_counts():
    # crossing-free graphs on convex n-gons: 8, 48, 352, 2880, 25216
    for n, want in zip(range(3, 8), (8, 48, 352, 2880, 25216)):
        assert count_plane(generate("convex", n, 1)) == want


@pytest.mark.parametrize("seed", range(4))
def test_enumeration_matches_brute_force(seed):
    S = generate("random", 6, seed)
    assert masks_of(enumerate_plane(S)) == oracle_masks(S)


def test_min_degree_filter_matches_oracle():
    f = CensusFilter(min_degree=1)
    want = sum(1 for c in class_members(CONVEX4) if min(degrees(CONVEX4, c)) >= 1)
    assert count_plane(CONVEX4, f) == want
    assert all(f.admits(G) for G in enumerate_plane(CONVEX4, f))


def test_max_edges_filter():
    for cap in range(7):
        f = CensusFilter(max_edges=cap)
        want = sum(1 for c in class_members(CONVEX4) if len(c) <= cap)
        assert count_plane(CONVEX4, f) == want


def test_with_c_floors():
    assert CensusFilter.with_c("1.968549", 7).max_edges == 13
    assert CensusFilter.with_c("2", 5, 1) == CensusFilter(1, 10)


def test_count_matches_stream_size():
    for n in range(4, 8):
        S = generate("random", n, n)
        assert count_plane(S) == len(list(enumerate_plane(S))) == census_scan(S).count


def test_triangulations_convex():
    for n in range(4, 8):
        assert len(list(enumerate_triangulations(generate("convex", n, 2)))) == CATALAN[n - 2]


@pytest.mark.parametrize("seed", range(5))
def test_triangulations_are_the_maximal_sets(seed):
    S = generate("random", 6, seed)
    tris = list(enumerate_triangulations(S))
    got = sorted(G.edges for G in tris)
    want = sorted(sum(1 << i for i in c) for c in maximal_plane(S))
    assert got == want
    assert len(set(got)) == len(got)
    h = len(convex_hull(S))
    for G in tris:
        assert G.m == 3 * S.N - 3 - h
        assert is_maximal(G.catalog, G.edges)


def test_qp_counts():
    assert len(list(enumerate_qp(CONVEX4, 3))) == 64
    assert count_class(CONVEX4, "qp3") == 64
    assert masks_of(enumerate_qp(CONVEX4, 2)) == masks_of(enumerate_plane(CONVEX4))


@pytest.mark.slow
def test_qp3_convex6_brute_force():
    S = generate("convex", 6, 0)
    assert masks_of(enumerate_qp(S, 3)) == oracle_masks(S, 3)


@pytest.mark.parametrize("k", [3, 4])
def test_qp_random_brute_force(k):
    S = generate("random", 5, 11)
    graphs = list(enumerate_qp(S, k))
    assert masks_of(graphs) == oracle_masks(S, k)
    assert all(G.is_quasi_plane(k) for G in graphs)


def test_max_edges_in_class():
    assert max_edges_in_class(CONVEX4, 3).observed == 6
    assert max_edges_in_class(CONVEX4, 2).observed == 5
    # the qp3 census at N = 8 needs more than 10^8 nodes
    for n in range(4, 8):
        r = max_edges_in_class(generate("random", n, 5), 3)
        assert r.holds or r.vacuous


def test_plane_edge_bound():
    for n in range(3, 8):
        S = generate("random", n, 40 + n)
        assert census_scan(S).max_m <= 3 * n - 6


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        census_scan(generate("random", 7, 0), budget=100)


def test_every_graph_is_plane():
    S = generate("random", 7, 9)
    assert all(G.is_plane() for G in enumerate_plane(S))


def _shear(S, a):
    return PointSet([(x + a * y, y) for x, y in S.coords()])


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 7), st.integers(0, 5000), st.randoms(use_true_random=False),
       st.integers(-3, 3))
def test_count_invariant_under_relabel_and_shear(n, seed, rnd, a):
    S = generate("random", n, seed)
    base = count_plane(S)
    coords = S.coords()
    rnd.shuffle(coords)
    assert count_plane(PointSet(coords)) == base
    assert count_plane(_shear(S, a)) == base


@pytest.mark.parametrize("workers", [2, 4])
def test_worker_determinism(workers):
    S = generate("random", 7, 3)
    one = census_scan(S, collect=True)
    many = census_scan(S, workers=workers, collect=True)
    assert one.masks == many.masks
    assert (one.count, one.hist, one.vx) == (many.count, many.hist, many.vx)


def test_stream_is_increasing():
    masks = masks_of(enumerate_plane(generate("random", 6, 2)))
    assert masks == sorted(masks)


def test_graph_helpers():
    G = build_catalog(CONVEX4).graph([(0, 1), (1, 2)])
    assert G.m == 2 and G.degree(1) == 2 and G.neighbors(1) == [0, 2]
    assert G.add((0, 2)).remove((0, 1)).neighbors(0) == [2]
    assert isinstance(G, GeoGraph)
    assert sum(comb(6, i) for i in range(7)) == 64
