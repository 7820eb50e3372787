"""Closed-form constants behind the charging arguments.

Charges, transfers and ledger maxima are exact rationals. The base
function of the plane-graphs-with-many-edges bound and the balancing
root are evaluated with mpmath interval arithmetic.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

import mpmath
from mpmath import iv

from .charging import closed_form_charge, exact
from .errors import DomainError, InconsistentSpec, NoRoot

Number = Union[int, Fraction, str, float]

C_MIN = Fraction(19, 12)
C_MAX = Fraction(3)
TAU = 30

PUBLISHED_C = "1.968549"
PUBLISHED_C1 = "1.978993"
PUBLISHED_C2 = "2.035802"
PUBLISHED_A2 = "0.455955"


def charge_max(A: Number) -> tuple[frozenset, Fraction]:
    """Maximize 2^(d-1) * (A - d) over integers d >= 0; ties returned as a set."""
    A = exact(A)
    if A < 1:
        raise DomainError("offset A must be >= 1")
    best = None
    arg = set()
    for d in range(0, math.ceil(A) + 1):
        v = Fraction(2) ** (d - 1) * (A - d)
        if best is None or v > best:
            best, arg = v, {d}
        elif v == best:
            arg.add(d)
    return frozenset(arg), best


def _split_value(kind: str, d: int) -> Fraction:
    agg = closed_form_charge(d, 7)
    if kind == "per-1ving":
        return agg / d
    if kind == "per-2ving":
        return agg / Fraction(d * (d - 1), 2)
    if kind == "per-3ving":
        return agg / Fraction(d * (d - 1) * (d - 2), 6)
    raise ValueError(f"unknown split kind {kind!r}")


def split_max(kind: str, d_min: Optional[int] = None) -> tuple[frozenset, Fraction]:
    """Largest share per i-ving when an x-ving's charge is split evenly over its i-ving predecessors.

    Searches d >= ``d_min`` (default: the smallest degree with such
    predecessors) up to 14, past which the aggregate charge is negative.
    """
    floor = {"per-1ving": 1, "per-2ving": 2, "per-3ving": 3}[kind]
    lo = floor if d_min is None else max(floor, d_min)
    best, arg = None, set()
    for d in range(lo, 15):
        v = _split_value(kind, d)
        if best is None or v > best:
            best, arg = v, {d}
        elif v == best:
            arg.add(d)
    return frozenset(arg), best


def solve_transfer(high: Number, low: Number, fan_in: int) -> tuple[Fraction, Fraction]:
    """Amount t with high - t == low + fan_in * t, and the common level."""
    high, low = exact(high), exact(low)
    if not high > low:
        raise ValueError("high must exceed low")
    if fan_in < 1:
        raise ValueError("fan_in must be >= 1")
    t = (high - low) / (fan_in + 1)
    return t, high - t


@dataclass(frozen=True)
class LedgerSpec:
    """Per-class base charges of a two-round transfer ledger.

    With ``offset`` set, an x-ving of degree k holds 2^(k-1)(offset - k).
    Otherwise it holds 2^(k-1)(2a + 4c - k), minus ``a + 2c`` when 0-vings
    are excluded (``no0``) and additionally ``k(a + 2c - 1)`` when 1-vings
    are excluded too (``no01``).
    """

    name: str
    a: Optional[Fraction] = None
    c: Optional[Fraction] = None
    offset: Optional[int] = None
    deduction: str = "none"
    high: tuple[int, int] = (7, 8)
    fan_in: tuple[int, int] = (4, 40)
    transfers: Optional[tuple[Fraction, Fraction]] = None
    published_mu: Optional[Fraction] = None
    max_degree: int = 40

    def base(self, k: int) -> Fraction:
        if self.offset is not None:
            return Fraction(2) ** (k - 1) * (self.offset - k)
        s = self.a + 2 * self.c
        v = Fraction(2) ** (k - 1) * (2 * self.a + 4 * self.c - k)
        if self.deduction in ("no0", "no01"):
            v -= s
        if self.deduction == "no01":
            v -= k * (s - 1)
        return v


@dataclass
class MuResult:
    mu: Fraction
    exact_mu: Fraction
    level1: Fraction
    transfers: tuple[Fraction, Fraction]
    exact_transfers: tuple[Fraction, Fraction]
    bases: dict
    trace: list = field(default_factory=list)


def mu_ledger(spec: LedgerSpec) -> MuResult:
    """Run both transfer rounds: high classes to x3, then high classes and x3 to x4.

    Amounts come from ``spec.transfers`` when given (the published rounded
    values), else from the balance solution; the exact balance optimum is
    always reported alongside.
    """
    bases = {k: spec.base(k) for k in range(2, spec.max_degree + 1)}
    high = max(bases[k] for k in spec.high)
    f3, f4 = spec.fan_in
    t1_exact, level1_exact = solve_transfer(high, bases[3], f3)
    t2_exact, mu_exact = solve_transfer(level1_exact, bases[4], f4)
    if spec.transfers is not None:
        t1, t2 = spec.transfers
    else:
        t1, t2 = t1_exact, t2_exact
    level1 = high - t1
    mu = level1 - t2
    trace = [
        f"base high classes {spec.high}: {float(high):.6f}",
        f"round 1: move {float(t1):.6f} to x3 (fan-in {f3}); level {float(level1):.6f}",
        f"x3 after round 1: {float(bases[3] + f3 * t1):.6f}",
        f"round 2: move {float(t2):.6f} to x4 (fan-in {f4}); level {float(mu):.6f}",
        f"x4 after round 2: {float(bases[4] + f4 * t2):.6f}",
    ]
    checks = {3: bases[3] + f3 * t1 - t2, 4: bases[4] + f4 * t2}
    for k, v in checks.items():
        if v > mu:
            raise InconsistentSpec(f"{spec.name}: x{k} ends at {float(v)} > mu {float(mu)}")
    for k, v in bases.items():
        if k in spec.high or k in (3, 4):
            continue
        if v > mu:
            raise InconsistentSpec(f"{spec.name}: untouched x{k} holds {float(v)} > mu {float(mu)}")
    return MuResult(mu, mu_exact, level1, (t1, t2), (t1_exact, t2_exact), bases, trace)


def plain_spec(c: Number = PUBLISHED_C, rounded: bool = True) -> LedgerSpec:
    c = exact(c)
    return LedgerSpec("plane, at most cN edges", a=(9 - 4 * c) / 2, c=c,
                      transfers=(Fraction("20.8"), Fraction("1.639")) if rounded else None,
                      published_mu=Fraction("105.561"))


def no_isolated_spec(rounded: bool = True) -> LedgerSpec:
    c = exact(PUBLISHED_C1)
    return LedgerSpec("min degree 1", a=(9 - 4 * c) / 2, c=c, deduction="no0",
                      transfers=(Fraction("20.8"), Fraction("1.639")) if rounded else None,
                      published_mu=Fraction("101.061"))


def min_degree_two_spec(rounded: bool = True) -> LedgerSpec:
    return LedgerSpec("min degree 2", a=exact(PUBLISHED_A2), c=exact(PUBLISHED_C2), deduction="no01",
                      transfers=(Fraction("18.639"), Fraction("1.508")) if rounded else None,
                      published_mu=Fraction("82.16"))


def direct_spec(rounded: bool = True) -> LedgerSpec:
    return LedgerSpec("alpha = 7, all plane graphs", offset=14, high=(12, 13),
                      transfers=(Fraction("810.4"), Fraction("78.18")) if rounded else None,
                      published_mu=Fraction("3207.42"))


# ---------------------------------------------------------------------------
# interval evaluation

@dataclass(frozen=True)
class IntervalValue:
    lo: float
    hi: float
    mid: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@contextmanager
def _precision(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _iv(x):
    x = exact(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _pow(base, e):
    return iv.exp(e * iv.log(base))


def _wrap(x) -> IntervalValue:
    """Float enclosure of an mpmath interval, widened by one ulp each way."""
    lo, hi = float(x.a), float(x.b)
    return IntervalValue(math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf),
                         float(mpmath.mpf(x.mid)))


def t_of_c(c: Number) -> IntervalValue:
    with _precision(120):
        return _wrap(_t_iv(_iv(c)))


def _t_iv(c):
    return (iv.sqrt(iv.mpf(49) / 4 + 3 * c + c * c) - iv.mpf(5) / 2 - c) / 2


def beta(c: Number) -> tuple[IntervalValue, IntervalValue]:
    """Base of the exponential bound on plane graphs with more than cN edges, relative to triangulations.

    Returns ``(beta(c), t(c))`` as certified enclosures.
    """
    cf = exact(c)
    if not C_MIN <= cf <= C_MAX:
        raise DomainError(f"c must lie in [19/12, 3], got {float(cf)}")
    with _precision(120):
        c = _iv(cf)
        t = _t_iv(c)
        half = iv.mpf(1) / 2
        u = c + t - half
        w = 3 - c - t
        denom = 8 * _pow(u, u) * _pow(w, w) * _pow(2 * t, t) * _pow(half - t, half - t)
        b = _pow(iv.mpf(5), iv.mpf(5) / 2) / denom
        return _wrap(b), _wrap(t)


@dataclass(frozen=True)
class BalanceResult:
    c: float
    value: float
    bracket: tuple[float, float]


def balance_c(mu: Union[Number, Callable[[float], float]], tau: float = TAU,
              tol: float = 1e-9) -> BalanceResult:
    """Bisect for c in [19/12, 9/4) where 2*mu/(9 - 4c) equals tau*beta(c)."""
    mu_of = mu if callable(mu) else (lambda _c, _m=float(exact(mu)): _m)
    if tau <= 0:
        raise ValueError("tau must be positive")

    def gap(c: float) -> float:
        return 2 * mu_of(c) / (9 - 4 * c) - tau * beta(max(Fraction(c), C_MIN))[0].mid

    lo, hi = float(C_MIN), 2.25 - 1e-9
    glo, ghi = gap(lo), gap(hi)
    if glo * ghi > 0:
        raise NoRoot("curves do not cross on [19/12, 9/4)")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        gm = gap(mid)
        if (gm < 0) == (glo < 0):
            lo, glo = mid, gm
        else:
            hi = mid
    c = (lo + hi) / 2
    return BalanceResult(c, 2 * mu_of(c) / (9 - 4 * c), (lo, hi))


def plain_mu(c: float) -> float:
    """Ledger maximum for the at-most-cN-edges scheme (independent of c once 2a + 4c = 9)."""
    return float(mu_ledger(plain_spec(repr(c))).mu)


def nu_peak(c: Number = PUBLISHED_C, m_over_n: Number = 3) -> tuple[int, Fraction]:
    """Peak of 2^(d-1)(2a + 4m/N - d) with a = (9 - 4c)/2."""
    c = exact(c)
    a = (9 - 4 * c) / 2
    arg, val = charge_max(2 * a + 4 * exact(m_over_n))
    return min(arg), val


# ---------------------------------------------------------------------------
# report

@dataclass(frozen=True)
class BoundEntry:
    name: str
    published: str
    value: str
    exact: Optional[str]
    deviation: float
    tolerance: float
    note: str

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass
class BoundReport:
    entries: list

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _entry(name, published, value, tol, note, exact_value=None) -> BoundEntry:
    pv = float(published) if isinstance(published, (int, Fraction)) else float(Fraction(published))
    if isinstance(value, Fraction):
        shown = _frac_str(value)
        fv = float(value)
        exact_value = exact_value if exact_value is not None else value
    else:
        fv = float(value)
        shown = f"{fv:.9g}"
    ex = _frac_str(exact_value) if isinstance(exact_value, Fraction) else exact_value
    return BoundEntry(name, str(published), shown, ex, abs(fv - pv), tol, note)


def bound_report() -> BoundReport:
    e = []
    arg, v = charge_max(14)
    e.append(_entry("4096", 4096, v, 0, f"max of 2^(d-1)(14-d), attained at d in {sorted(arg)}"))
    d3 = mu_ledger(direct_spec())
    d3x = mu_ledger(direct_spec(rounded=False))
    e.append(_entry("810.4", "810.4", d3.transfers[0], 0, "balance 4096 - t = 44 + 4t"))
    e.append(_entry("3285.6", "3285.6", d3.level1, 0, "level after the x3 round"))
    e.append(_entry("78.18", "78.18", d3.transfers[1], 0,
                    f"published rounding of the exact balance {_frac_str(d3x.transfers[1])}"))
    e.append(_entry("3207.42", "3207.42", d3.mu, 0.01,
                    f"3285.6 - 78.18; exact optimum {float(d3x.mu):.6f}", exact_value=d3x.mu))
    for A, name, published in ((28, "2^26", 2**26), (146, "2^145", 2**145), (9, "128", 128)):
        arg, v = charge_max(A)
        note = f"max of 2^(d-1)({A}-d) at d in {sorted(arg)}"
        if v != published:
            note += f"; the maximum is {'2^%d' % (v.numerator.bit_length() - 1)}, the published value is looser"
        e.append(_entry(name, published, v, 0, note))
    for kind, published in (("per-1ving", Fraction(1024, 3)), ("per-2ving", Fraction(2048, 33))):
        arg, v = split_max(kind)
        e.append(_entry(f"{kind} share", published, v, 0, f"attained at d in {sorted(arg)}"))
    arg, v = split_max("per-3ving", d_min=5)
    garg, gv = split_max("per-3ving")
    e.append(_entry("per-3ving share", Fraction(1024, 55), v, 0,
                    f"max over d >= 5 at d in {sorted(arg)}; over all d >= 3 the max is "
                    f"{_frac_str(gv)} at d in {sorted(garg)}"))
    p = mu_ledger(plain_spec())
    px = mu_ledger(plain_spec(rounded=False))
    e.append(_entry("20.8", "20.8", p.transfers[0], 0, "balance 128 - t = 24 + 4t"))
    e.append(_entry("1.639", "1.639", p.transfers[1], 0,
                    f"published rounding of {_frac_str(px.transfers[1])}"))
    e.append(_entry("105.561", "105.561", p.mu, 0.002, f"exact optimum {float(px.mu):.6f}",
                    exact_value=px.mu))
    i1 = mu_ledger(no_isolated_spec())
    e.append(_entry("123.5", "123.5", max(i1.bases[7], i1.bases[8]), 0, "min degree 1, x7/x8 base"))
    e.append(_entry("102.7", "102.7", i1.level1, 0, "min degree 1, after x3 round"))
    e.append(_entry("101.061", "101.061", i1.mu, 0.002, "min degree 1 ledger maximum"))
    i2 = mu_ledger(min_degree_two_spec())
    e.append(_entry("102.307", "102.307", max(i2.bases[7], i2.bases[8]), 0.001,
                    "min degree 2, x7/x8 base with a = 0.455955"))
    e.append(_entry("82.16", "82.16", i2.mu, 0.002, "min degree 2 ledger maximum"))
    for name, c, published in (("187.53", PUBLISHED_C, "187.53"), ("186.46", PUBLISHED_C1, "186.46"),
                           ("180.20", PUBLISHED_C2, "180.20")):
        b, _ = beta(c)
        e.append(_entry(name, published, 30 * b.mid, 0.2,
                        f"30*beta({c}) in [{30 * b.lo:.9f}, {30 * b.hi:.9f}]"))
    bal = balance_c(float(p.mu))
    e.append(_entry("c*", PUBLISHED_C, bal.c, 0.002, f"balance root, common value {bal.value:.6f}"))
    e.append(_entry("balance value", "187.53", bal.value, 0.2, "2 mu / (9 - 4c*)"))
    d, nu = nu_peak()
    e.append(BoundEntry("nu", "5144.58", f"{float(nu):.6f}", _frac_str(nu), 0.0, float("inf"),
                        f"published upper bound, not reproduced from displayed formula; "
                        f"formula peaks at d = {d}"))
    return BoundReport(e)
