from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import CONVEX4, TRIANGLE, corpus
from vinglab.census import CensusFilter, as_catalog, build_catalog, enumerate_plane
from vinglab.charging import (ChargeLedger, ChargeRule, TransferStep, apply_transfers,
                              binomial_charge_sum, census_graphs, closed_form_charge,
                              closed_form_violations, exact, per_graph_total, route_to_x,
                              seven_sums, seven_sums_check, verify_identity,
                              xving_aggregate_charge, ReductionPolicy)
from vinglab.errors import FanInExceeded
from vinglab.io import generate
from vinglab.vings import Ving, is_x_ving


def test_exact_decimal_literals():
    assert exact("810.4") == Fraction(4052, 5)
    assert exact(20.8) == Fraction(104, 5)
    assert exact(3) == 3


def test_per_graph_totals():
    cat = build_catalog(generate("random", 6, 4))
    rule = ChargeRule.offset(7)
    assert per_graph_total(cat.graph(), rule) == 7 * 6
    for G in enumerate_plane(cat):
        assert per_graph_total(G, rule) == 7 * 6 - 2 * G.m >= 6 + 12


def test_edge_linked_total_is_aN():
    a = Fraction(9, 2) - 2 * Fraction("1.968549")
    rule = ChargeRule.edge_linked(a)
    for G in enumerate_plane(generate("random", 6, 8)):
        assert per_graph_total(G, rule) == a * 6


def test_route_three_points():
    graphs = list(enumerate_plane(TRIANGLE))
    ledger = route_to_x(graphs, ChargeRule.offset(7))
    assert ledger.total == 144 == 21 * 8 - 2 * 12
    full = build_catalog(TRIANGLE).graph([(0, 1), (1, 2), (0, 2)]).edges
    assert all(ledger.entries[(full, p)] == 24 for p in range(3))


@pytest.mark.parametrize("S", corpus(6), ids=lambda S: f"N{S.N}")
def test_conservation_and_closed_form(S):
    graphs = census_graphs(S)
    ledger = route_to_x(graphs, ChargeRule.offset(7))
    assert ledger.total == sum(per_graph_total(G, ChargeRule.offset(7)) for G in graphs)
    assert ledger.total == ledger.initial_total
    assert closed_form_violations(ledger, 7) == []


def test_closed_form_quasi_plane():
    S = generate("random", 5, 3)
    for cls, alpha in (("qp3", 14), ("qp4", 73)):
        ledger = route_to_x(census_graphs(S, cls), ChargeRule.offset(alpha, cls))
        assert closed_form_violations(ledger, alpha) == []


def test_filtered_ledger_targets_may_leave_filter():
    S = generate("random", 6, 1)
    f = CensusFilter(max_edges=4)
    ledger = route_to_x(census_graphs(S, filt=f), ChargeRule.offset(7))
    assert any(bin(edges).count("1") > 4 for edges, _ in ledger.entries)


@pytest.mark.parametrize("alpha", [7, 14, 73])
def test_binomial_sum_closed_form(alpha):
    for d in range(61):
        assert binomial_charge_sum(d, alpha) == closed_form_charge(d, alpha)


def test_aggregate_charge_values():
    assert xving_aggregate_charge(2, 7) == 24
    assert xving_aggregate_charge(3, 7) == 44
    assert xving_aggregate_charge(12, 7) == xving_aggregate_charge(13, 7) == 4096


def test_identity_examples():
    rep = verify_identity(CONVEX4)
    assert (rep.lhs, rep.rhs, rep.ok) == (32, 32, True)
    assert rep.lhs_at == rep.rhs_at == (8, 8, 8, 8)
    rep3 = verify_identity(CONVEX4, "qp3")
    assert (rep3.lhs, rep3.rhs, rep3.ok) == (32, 32, True)


@pytest.mark.parametrize("seed", range(3))
def test_identity_five_points(seed):
    assert verify_identity(generate("random", 5, seed)).ok


def test_identity_filtered_is_inequality():
    S = generate("random", 6, 2)
    for f in (CensusFilter(min_degree=1), CensusFilter(max_edges=5)):
        rep = verify_identity(S, filt=f)
        assert rep.relation == "le" and rep.ok and rep.lhs <= rep.rhs


@pytest.mark.parametrize("seed", range(3))
def test_every_single_flip_is_caught(seed):
    S = generate("random", 5, seed)
    cat = build_catalog(S)
    for i in range(cat.nseg):
        for j in range(i + 1, cat.nseg):
            assert not verify_identity(S, catalog=cat.with_flipped(i, j)).ok


def test_disjoint_flip_on_four_points_is_invisible():
    # no S - q contains both segments, and the flipped relation is still a
    # valid abstract crossing relation, so every count is unchanged
    cat = build_catalog(CONVEX4)
    i, j = cat.seg(0, 2), cat.seg(1, 3)
    assert verify_identity(CONVEX4, catalog=cat.with_flipped(i, j)).ok
    assert not verify_identity(CONVEX4, catalog=cat.with_flipped(cat.seg(0, 1), cat.seg(0, 2))).ok


def _synthetic():
    ledger = ChargeLedger(None)
    ledger.add("x12", Fraction(4096), 12)
    ledger.add("x3", Fraction(44), 3)
    return ledger


def test_synthetic_transfer():
    step = TransferStep(Fraction("810.4"), (12, 13), 3, 4)
    out = apply_transfers(_synthetic(), [step], lambda key, st, led: [(key, "x3", 3)])
    assert out.entries == {"x12": Fraction("3285.6"), "x3": Fraction("854.4")}
    assert out.total == _synthetic().total


def test_fan_in_is_enforced():
    ledger = ChargeLedger(None)
    for i in range(5):
        ledger.add(f"x12-{i}", Fraction(4096), 12)
    ledger.add("x3", Fraction(44), 3)
    step = TransferStep(Fraction("810.4"), (12,), 3, 4)
    with pytest.raises(FanInExceeded):
        apply_transfers(ledger, [step], lambda key, st, led: [(key, "x3", 3)])


def test_census_transfers_conserve():
    S = generate("random", 6, 6)
    cat = as_catalog(S)
    ledger = route_to_x(census_graphs(cat), ChargeRule.offset(7))
    steps = [TransferStep(Fraction("20.8"), (5, 6), 3, 4),
             TransferStep(Fraction("1.639"), (5, 6), 4, 40)]
    policy = ReductionPolicy(cat)
    out = apply_transfers(ledger, steps, policy)
    assert out.total == ledger.total
    # nothing of degree 12 or 13 exists at this size
    noop = apply_transfers(ledger, [TransferStep(Fraction("810.4"), (12, 13), 3, 4)], policy)
    assert noop.entries == ledger.entries


def test_reduction_policy_targets_are_x_vings():
    S = generate("random", 6, 101)
    cat = as_catalog(S)
    policy = ReductionPolicy(cat)
    step = TransferStep(Fraction(1), (4, 5), 3, 4)
    ledger = route_to_x(census_graphs(cat), ChargeRule.offset(7))
    moved = 0
    for key, d in ledger.degrees.items():
        if d in (4, 5):
            for _, (edges, p), rdeg in policy(key, step, ledger):
                v = Ving(p, cat.graph(edges))
                assert is_x_ving(v) and v.degree == rdeg == 3
                moved += 1
    assert moved


def test_seven_sums():
    r = seven_sums_check(30, (12, 13))
    assert r.max_hits == 4 and r.witness == (9, 1, 0) and r.ok
    assert seven_sums_check(30, (7, 8)).max_hits == 4
    assert sum(s in (12, 13) for s in seven_sums(9, 9, 9)) <= 4


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_seven_sums_never_exceed_four(a, b, c):
    # pairs {3,4} and {4,5} can be hit more often; the bound is for degree >= 5
    for v in range(5, 30):
        assert sum(s in (v, v + 1) for s in seven_sums(a, b, c)) <= 4


def test_seven_sums_brute_force_agrees():
    best = max(sum(s in (12, 13) for s in seven_sums(a, b, c))
               for a, b, c in product(range(31), repeat=3))
    assert best == seven_sums_check(30, (12, 13)).max_hits
