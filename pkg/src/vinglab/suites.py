"""Verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from . import bounds
from .census import (DEFAULT_BUDGET, NO_FILTER, CensusFilter, GeoGraph, as_catalog, census_scan,
                     class_k)
from .charging import (ChargeRule, ReductionPolicy, TransferStep, apply_transfers,
                       binomial_charge_sum, closed_form_charge, closed_form_violations,
                       per_graph_total, route_to_x, seven_sums_check, verify_identity)
from .vings import Ving, is_x_ving, x4_predecessor_count

SUITES = ("identity", "charge-law", "seven-sums", "ledger", "lower-bound", "x4")
ALPHA = {"plane": 7, "qp3": 14, "qp4": 73}


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed,
                "detail": self.detail}


def identity_suite(S, cls="plane", filt=NO_FILTER, budget=DEFAULT_BUDGET, workers=1,
                   catalog=None) -> list[SuiteResult]:
    rep = verify_identity(S, cls, filt, budget, workers, catalog=catalog)
    return [SuiteResult("identity", f"{cls} x-ving identity", rep.ok, rep.describe())]


def charge_law_suite(S, cls="plane", budget=DEFAULT_BUDGET, workers=1) -> list[SuiteResult]:
    cat = as_catalog(S)
    alpha = ALPHA[cls]
    masks = census_scan(cat, class_k(cls), NO_FILTER, budget, workers, collect=True).masks
    graphs = [GeoGraph(cat, m) for m in masks]
    rule = ChargeRule.offset(alpha, cls)
    ledger = route_to_x(graphs, rule)
    expected = sum((per_graph_total(G, rule) for G in graphs), Fraction(0))
    out = [SuiteResult("charge-law", "conservation", ledger.total == expected == ledger.initial_total,
                       f"ledger total {ledger.total} vs census total {expected}")]
    bad = closed_form_violations(ledger, alpha)
    out.append(SuiteResult("charge-law", f"closed form 2^(d-1)({2 * alpha}-d)", not bad,
                           f"{len(ledger.entries)} x-vings, {len(bad)} mismatches"))
    out.append(SuiteResult("charge-law", "binomial sum = closed form, d <= 60",
                           all(binomial_charge_sum(d, alpha) == closed_form_charge(d, alpha)
                               for d in range(61)),
                           f"alpha = {alpha}"))
    if cls == "plane":
        N = cat.N
        low = min((per_graph_total(G, rule) for G in graphs), default=Fraction(0))
        out.append(SuiteResult("charge-law", "per-graph total >= N + 12",
                               N < 3 or low >= N + 12, f"minimum {low}, N + 12 = {N + 12}"))
        a = (9 - 4 * Fraction(bounds.PUBLISHED_C)) / 2
        linked = ChargeRule.edge_linked(a)
        ok = all(per_graph_total(G, linked) == a * N for G in graphs)
        out.append(SuiteResult("charge-law", "edge-linked per-graph total = aN", ok, f"a = {a}"))
    return out


def seven_sums_suite() -> list[SuiteResult]:
    out = []
    for targets in ((12, 13), (7, 8)):
        r = seven_sums_check(30, targets)
        out.append(SuiteResult("seven-sums", f"targets {targets}", r.max_hits == 4,
                               f"max hits {r.max_hits}, witness {r.witness}"))
    return out


def ledger_suite(S=None, budget=DEFAULT_BUDGET, workers=1) -> list[SuiteResult]:
    out = []
    for spec, tol in ((bounds.plain_spec(), Fraction("0.002")),
                      (bounds.no_isolated_spec(), Fraction("0.002")),
                      (bounds.min_degree_two_spec(), Fraction("0.002")),
                      (bounds.direct_spec(), Fraction("0.01"))):
        res = bounds.mu_ledger(spec)
        dev = abs(res.mu - spec.published_mu)
        out.append(SuiteResult("ledger", spec.name, dev <= tol,
                               f"mu {float(res.mu):.6f} (exact optimum {float(res.exact_mu):.6f}), "
                               f"published {float(spec.published_mu)}"))
    if S is not None:
        cat = as_catalog(S)
        masks = census_scan(cat, 2, NO_FILTER, budget, workers, collect=True).masks
        ledger = route_to_x((GeoGraph(cat, m) for m in masks), ChargeRule.offset(7))
        steps = [TransferStep(Fraction("810.4"), (12, 13), 3, 4),
                 TransferStep(Fraction("78.18"), (12, 13), 4, 40)]
        after = apply_transfers(ledger, steps, ReductionPolicy(cat))
        out.append(SuiteResult("ledger", "transfer conservation on census",
                               after.total == ledger.total,
                               f"total {after.total}, max {after.max_entry()}"))
    return out


def lower_bound_suite(S, budget=DEFAULT_BUDGET, workers=1) -> list[SuiteResult]:
    cat = as_catalog(S)
    s = census_scan(cat, 2, NO_FILTER, budget, workers)
    N = cat.N
    v = [Fraction(c, s.count) for c in s.hist] + [Fraction(0)] * 4
    vx = Fraction(s.vx, s.count)
    checks = [
        ("v0 >= N/4096", v[0] >= Fraction(N, 4096), v[0]),
        ("v1 >= 3N/1024", v[1] >= Fraction(3 * N, 1024), v[1]),
        ("v2 >= 33N/2048", v[2] >= Fraction(33 * N, 2048), v[2]),
        ("v2 + v3 >= N/24", v[2] + v[3] >= Fraction(N, 24), v[2] + v[3]),
        ("vx >= N/4096", vx >= Fraction(N, 4096), vx),
        ("v0 = vx", v[0] == vx, v[0]),
    ]
    return [SuiteResult("lower-bound", name, ok, f"{val} ~ {float(val):.6f}")
            for name, ok, val in checks]


def x4_suite(S, budget=DEFAULT_BUDGET, workers=1) -> list[SuiteResult]:
    cat = as_catalog(S)
    masks = census_scan(cat, 2, NO_FILTER, budget, workers, collect=True).masks
    worst, seen = 0, 0
    for m in masks:
        G = GeoGraph(cat, m)
        for p, d in enumerate(G.degrees()):
            if d == 4 and is_x_ving(Ving(p, G)):
                seen += 1
                worst = max(worst, x4_predecessor_count(Ving(p, G)))
    return [SuiteResult("x4", "x3 predecessors per x4-ving <= 8", worst <= 8,
                        f"{seen} x4-vings, worst count {worst}")]


def run_suites(names, S=None, cls="plane", filt: CensusFilter = NO_FILTER,
               budget=DEFAULT_BUDGET, workers=1, catalog=None) -> list[SuiteResult]:
    if "all" in names:
        names = SUITES
    out: list[SuiteResult] = []
    for name in names:
        if name == "seven-sums":
            out += seven_sums_suite()
        elif name == "ledger":
            out += ledger_suite(S, budget, workers)
        elif S is None:
            raise ValueError(f"suite {name!r} needs a point set")
        elif name == "identity":
            out += identity_suite(S, cls, filt, budget, workers, catalog)
        elif name == "charge-law":
            out += charge_law_suite(S, cls, budget, workers)
        elif name == "lower-bound":
            out += lower_bound_suite(S, budget, workers)
        elif name == "x4":
            out += x4_suite(S, budget, workers)
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
