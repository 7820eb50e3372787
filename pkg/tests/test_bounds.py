from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vinglab import bounds
from vinglab.bounds import (LedgerSpec, balance_c, beta, bound_report, charge_max, mu_ledger,
                            nu_peak, plain_mu, solve_transfer, split_max, t_of_c)
from vinglab.errors import DomainError, InconsistentSpec, NoRoot


def brute_charge_max(A):
    vals = {d: Fraction(2) ** (d - 1) * (A - d) for d in range(0, 4 * A + 1)}
    top = max(vals.values())
    return frozenset(d for d, v in vals.items() if v == top), top


@pytest.mark.parametrize("A,arg,val", [(14, {12, 13}, 4096), (28, {26, 27}, 2**26),
                                       (9, {7, 8}, 128)])
def test_charge_max_examples(A, arg, val):
    assert charge_max(A) == (frozenset(arg), val)


def test_charge_max_146_true_value():
    # maximum sits at d in {144, 145} with value 2^144
    assert charge_max(146) == (frozenset({144, 145}), 2**144)


def test_charge_max_matches_brute_force():
    for A in range(1, 201):
        assert charge_max(A) == brute_charge_max(A)


def test_split_max():
    assert split_max("per-1ving") == (frozenset({12}), Fraction(1024, 3))
    assert split_max("per-2ving") == (frozenset({12}), Fraction(2048, 33))
    assert split_max("per-3ving", d_min=5) == (frozenset({11, 12}), Fraction(1024, 55))
    # without the d >= 5 restriction the small degrees dominate
    assert split_max("per-3ving") == (frozenset({3}), Fraction(44))


@pytest.mark.parametrize("high,low,fan,t,level", [
    (128, 24, 4, Fraction(104, 5), Fraction(536, 5)),
    (4096, 44, 4, Fraction(4052, 5), Fraction(16428, 5)),
    (Fraction("123.5"), Fraction("19.5"), 4, Fraction("20.8"), Fraction("102.7")),
])
def test_solve_transfer_examples(high, low, fan, t, level):
    assert solve_transfer(high, low, fan) == (t, level)


def test_solve_transfer_forty():
    t, level = solve_transfer(Fraction("107.2"), 40, 40)
    assert t == Fraction(336, 205)
    assert abs(t - Fraction("1.639")) < Fraction(1, 1000)
    assert abs(level - Fraction("105.561")) < Fraction(1, 1000)


@given(st.fractions(min_value=1, max_value=10**6), st.fractions(min_value=0, max_value=1),
       st.integers(1, 64))
def test_solve_transfer_balances(high, frac, fan):
    low = high * frac
    if low >= high:
        return
    t, level = solve_transfer(high, low, fan)
    assert high - t == level == low + fan * t


@pytest.mark.parametrize("spec,mu,tol", [
    (bounds.plain_spec(), "105.561", "0.001"),
    (bounds.no_isolated_spec(), "101.061", "0.001"),
    (bounds.min_degree_two_spec(), "82.16", "0.002"),
    (bounds.direct_spec(), "3207.42", "0.01"),
])
def test_mu_ledger(spec, mu, tol):
    res = mu_ledger(spec)
    assert abs(res.mu - Fraction(mu)) <= Fraction(tol)
    # every class respects mu after the two rounds
    f3, f4 = spec.fan_in
    t1, t2 = res.transfers
    assert res.bases[3] + f3 * t1 - t2 <= res.mu
    assert res.bases[4] + f4 * t2 <= res.mu
    assert all(v <= res.mu for k, v in res.bases.items() if k not in spec.high + (3, 4))


def test_mu_ledger_base_values():
    b = mu_ledger(bounds.no_isolated_spec()).bases
    assert (b[7], b[8], b[3], b[4]) == (Fraction("123.5"), Fraction("123.5"),
                                        Fraction("19.5"), Fraction("35.5"))
    b = mu_ledger(bounds.min_degree_two_spec()).bases
    assert abs(b[7] - Fraction("102.307")) < Fraction(1, 1000)
    assert Fraction("9.110") < b[3] < Fraction("9.111")
    assert Fraction("21.803") < b[4] < Fraction("21.804")


def test_direct_spec_exact_optimum():
    res = mu_ledger(bounds.direct_spec())
    assert res.exact_transfers == (Fraction(4052, 5), Fraction(16028, 205))
    assert abs(float(res.exact_mu) - 3207.4146) < 1e-4


def test_inconsistent_spec():
    bad = LedgerSpec("bad", offset=14, high=(5, 6), transfers=(Fraction(1), Fraction(1)))
    with pytest.raises(InconsistentSpec):
        mu_ledger(bad)


@pytest.mark.parametrize("c,target", [("1.968549", 187.53), ("1.978993", 186.46),
                                      ("2.035802", 180.20)])
def test_beta_values(c, target):
    b, t = beta(c)
    assert abs(30 * b.mid - target) < 0.1
    assert b.width <= 1e-9 and t.width <= 1e-9
    assert b.mid in b


def test_beta_domain():
    for c in ("1.5", "3.01"):
        with pytest.raises(DomainError):
            beta(c)
    beta(Fraction(19, 12))
    beta(3)


def test_beta_monotone_decreasing():
    grid = [Fraction(190 + i, 100) for i in range(21)]
    vals = [beta(c)[0] for c in grid]
    assert all(a.lo > b.hi for a, b in zip(vals, vals[1:]))


def test_t_of_c_formula():
    c = 2.0
    t = t_of_c("2").mid
    assert abs(t - 0.5 * ((3.5**2 + 3 * c + c * c) ** 0.5 - 2.5 - c)) < 1e-12


def test_balance_c():
    res = balance_c(plain_mu)
    assert abs(res.c - 1.9685) < 0.001
    assert abs(res.value - 187.53) < 0.15
    fixed = balance_c(Fraction("105.561"))
    assert abs(2 * 105.561 / (9 - 4 * fixed.c) - 187.53) < 0.05


def test_balance_c_tau_direction():
    # the root moves up with tau: tau * beta(c) drops as c grows, so a
    # larger tau meets the increasing 2mu/(9 - 4c) curve further right
    lo, mid, hi = (balance_c(plain_mu, tau).c for tau in (25, 30, 35))
    assert lo < mid < hi


def test_balance_c_no_root():
    with pytest.raises(NoRoot):
        balance_c(10**6)


def test_nu_peak():
    d, val = nu_peak()
    assert d == 12
    assert val == Fraction(36025728, 15625)


def test_bound_report():
    rep = bound_report()
    names = [e.name for e in rep.entries]
    for key in ("4096", "3207.42", "187.53", "2^26", "c*"):
        assert key in names
    assert rep.get("4096").deviation == 0
    assert rep.get("2^26").deviation == 0
    assert rep.get("3207.42").deviation == 0
    assert rep.get("3207.42").exact.startswith("131504/41")
    assert not rep.get("2^145").ok
    assert "not reproduced" in rep.get("nu").note
