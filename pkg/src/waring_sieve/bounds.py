"""Every explicit inequality checked against exact counts.

Left sides are exact rationals (or a double with an error bound, for
exponential sums). Right sides are evaluated as mpmath intervals at
``digits`` decimal digits, so a verdict can only be "holds" if the exact
left side is at most the upper end of a rigorous enclosure of the right side
(widened by the left side's own error). Reported ``rhs`` is the enclosure
midpoint and ``numeric_error`` its radius plus the left side's error.

Unconditional statements (Zhu-Wan, the Odlyzko-Stanley total, the subset
bound driven by max |character sum|, the explicit monomial-sum bounds) are
reported with ``asserted=True``. The main ``p^(1-eps)`` bound and the open
problem depend on an ineffective eps and are purely descriptive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from mpmath import libmp
from mpmath.ctx_iv import MPIntervalContext

from .combinatorics import gen_binomial
from .counters import (
    CountTable,
    count_dp,
    odlyzko_stanley_tables,
    total_count,
)
from .domain import ValuedDomain
from .field import CharacterSumProfile, character_profile, make_modulus
from .report import BoundReport

__all__ = [
    "DEFAULT_DIGITS",
    "BoundParams",
    "check_os_total",
    "check_zhu_wan",
    "check_lemma31",
    "lemma31_reports",
    "check_exp_sum",
    "exp_sum_regime",
    "covered_exponents",
    "check_thm11",
    "thm11_holds",
    "fit_epsilon",
    "check_open_problem",
    "SolvabilityReport",
    "solvability_range",
    "positivity",
    "BOURGAIN_GARAEV_DELTA_PRIME",
    "CP_LAMBDA_PRINTED_APPROX",
]

DEFAULT_DIGITS = 60
FIT_TOLERANCE = 1e-6

# Recorded for reference only; no check depends on them.
BOURGAIN_GARAEV_DELTA_PRIME = 0.000015927
CP_LAMBDA_PRINTED_APPROX = 1.51967


@lru_cache(maxsize=8)
def _ctx(digits: int) -> MPIntervalContext:
    if digits < 50:
        raise ValueError("at least 50 digits are required")
    ctx = MPIntervalContext()
    ctx.dps = digits
    return ctx


def _ends(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    return Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))


def _decide(name, instance, lhs, rhs_iv, *, lhs_error=Fraction(0), asserted=True, regime=None, extra=None):
    lo, hi = _ends(rhs_iv)
    mid, rad = (lo + hi) / 2, (hi - lo) / 2
    err = rad + lhs_error
    return BoundReport(
        name=name,
        instance=instance,
        lhs=lhs,
        rhs=mid,
        holds=lhs <= mid + err,
        slack=mid - lhs,
        numeric_error=err,
        regime=regime,
        asserted=asserted,
        extra=extra or {},
    )


@dataclass(frozen=True)
class BoundParams:
    """delta, epsilon and c for the conditional statements.

    ``lam`` is the explicit constant 2 / 4^(1/3) of the monomial-sum bounds.
    Logarithms are natural.
    """

    delta: float | None = None
    epsilon: float | None = None
    c: float | None = None
    lam: float = 2 / 4 ** (1 / 3)
    log_convention: str = "natural"

    def __post_init__(self):
        d, e = self.delta, self.epsilon
        if d is not None and not 0 < d < 1:
            raise ValueError(f"delta must lie in (0, 1), got {d}")
        if e is not None and e <= 0:
            raise ValueError(f"epsilon must be positive, got {e}")
        if d is not None and e is not None and not e < d:
            raise ValueError(f"need 0 < epsilon < delta, got epsilon={e}, delta={d}")
        if self.c is not None and not 0 < self.c < 1:
            raise ValueError(f"c must lie in (0, 1), got {self.c}")


def _deviation(count: int, mean: Fraction) -> Fraction:
    return abs(count - mean)


def check_os_total(p, m: int, log_base: str = "e", digits: int = DEFAULT_DIGITS) -> list[BoundReport]:
    """|N*_m(b) - 2^(p-1)/p| <= 4/sqrt(2 pi) * exp(m sqrt(p) log p), one report per b.

    The natural-log form is asserted; ``log_base="2"`` gives the base-2
    variant for comparison (not asserted).
    """
    p = make_modulus(p).p
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if log_base not in ("e", "2"):
        raise ValueError("log_base must be 'e' or '2'")
    ctx = _ctx(digits)
    log_p = ctx.log(p) if log_base == "e" else ctx.log(p) / ctx.log(2)
    rhs = 4 / ctx.sqrt(2 * ctx.pi) * ctx.exp(m * ctx.sqrt(p) * log_p)
    mean = Fraction(2 ** (p - 1), p)
    name = "os" if log_base == "e" else "os-log2"
    return [
        _decide(name, {"p": p, "m": m, "k": None, "b": b}, _deviation(n, mean), rhs, asserted=log_base == "e")
        for b, n in enumerate(total_count(p, m))
    ]


def check_zhu_wan(p, m: int, k: int, digits: int = DEFAULT_DIGITS, table: CountTable | None = None) -> list[BoundReport]:
    """|N*_m(k,b) - C(p-1,k)/p| <= 2 p^(-1/2) C(m sqrt(p) + 1 + k, k) for every b."""
    p = make_modulus(p).p
    if not 1 <= k <= p - 1:
        raise ValueError(f"k must lie in [1, {p - 1}], got {k}")
    if table is None:
        table = odlyzko_stanley_tables(p, m, k)[k]
    ctx = _ctx(digits)
    sp = ctx.sqrt(p)
    rhs = 2 / sp * gen_binomial(m * sp + 1 + k, k)
    mean = Fraction(math.comb(p - 1, k), p)
    return [
        _decide("zhuwan", {"p": p, "m": m, "k": k, "b": b}, _deviation(n, mean), rhs)
        for b, n in enumerate(table)
    ]


def _phi_interval(ctx, profile: CharacterSumProfile):
    lo = max(0.0, profile.phi - profile.error_bound)
    hi = profile.phi + profile.error_bound
    return ctx.mpf([lo, hi])


def check_lemma31(
    D: ValuedDomain,
    k: int,
    digits: int = DEFAULT_DIGITS,
    *,
    table: CountTable | None = None,
    profile: CharacterSumProfile | None = None,
    extra: dict | None = None,
) -> list[BoundReport]:
    """|N(k,b,D) - C(n,k)/p| <= C(Phi(D) + k - 1, k), Phi's float error enclosed."""
    n, p = D.n, D.p.p
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    if table is None:
        table = count_dp(D, k)[k]
    if profile is None:
        profile = character_profile(D)
    ctx = _ctx(digits)
    rhs = gen_binomial(_phi_interval(ctx, profile) + (k - 1), k)
    mean = Fraction(math.comb(n, k), p)
    info = {"set": D.describe(), **(extra or {})}
    return [
        _decide("lemma31", {"p": p, "m": None, "k": k, "b": b, **info}, _deviation(c, mean), rhs, extra={"phi": profile.phi})
        for b, c in enumerate(table)
    ]


def lemma31_reports(D: ValuedDomain, ks: Sequence[int] | None = None, digits: int = DEFAULT_DIGITS, extra=None) -> list[BoundReport]:
    """check_lemma31 over several k, sharing one count table and one profile."""
    ks = list(range(1, D.n + 1)) if ks is None else list(ks)
    if not ks:
        return []
    tables = count_dp(D, max(ks))
    profile = character_profile(D)
    out = []
    for k in ks:
        out += check_lemma31(D, k, digits, table=tables[k], profile=profile, extra=extra)
    return out


def exp_sum_regime(p: int, m: int) -> tuple[str, str]:
    """(explicit-bound regime, asymptotic regime) for the monomial sum, by exact integer tests."""
    if m**3 <= 27 * p:
        cp = "I"
    elif m * m < p:
        cp = "II"
    elif 27 * m**3 < p * p:
        cp = "III"
    else:
        cp = "none"
    if m**3 <= p:
        hbk = "I"
    elif m * m <= p:
        hbk = "II"
    elif m**3 <= p * p:
        hbk = "III"
    else:
        hbk = "none"
    return cp, hbk


def covered_exponents(p: int) -> list[int]:
    """All m >= 1 with an explicit monomial-sum bound at p."""
    out, m = [], 1
    while exp_sum_regime(p, m)[0] != "none":
        out.append(m)
        m += 1
    return out


def check_exp_sum(p, m: int, digits: int = DEFAULT_DIGITS) -> list[BoundReport]:
    """|sum_{x in F_p*} e_p(a x^m)| against the explicit piecewise bound, for every a."""
    p = make_modulus(p).p
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    ctx = _ctx(digits)
    cp, hbk = exp_sum_regime(p, m)
    lam = 2 / ctx.exp(ctx.log(4) / 3)
    if cp == "I":
        rhs = m * ctx.sqrt(p)
    elif cp == "II":
        rhs = lam * ctx.exp(ctx.mpf(5) / 8 * ctx.log(m * p))
    elif cp == "III":
        rhs = lam * ctx.exp(ctx.mpf(3) / 8 * ctx.log(m) + ctx.mpf(3) / 4 * ctx.log(p))
    else:
        rhs = ctx.mpf(p - 1)
    profile = character_profile(ValuedDomain.power_image(p, m))
    err = Fraction(profile.error_bound)
    regime = f"cp:{cp},hbk:{hbk}"
    return [
        _decide(
            "expsum",
            {"p": p, "m": m, "k": None, "b": None, "a": a},
            Fraction(float(profile.magnitudes[a - 1])),
            rhs,
            lhs_error=err,
            regime=regime,
        )
        for a in range(1, p)
    ]


def _thm11_rhs(ctx, p: int, m: int, k: int, eps: float):
    if math.isinf(eps):
        base = ctx.mpf(0)
    else:
        base = ctx.exp((1 - ctx.mpf(eps)) * ctx.log(p))
    return gen_binomial(base + (m * k - m), k)


def _open_rhs(ctx, p: int, k: int, eps: float):
    base = ctx.mpf(0) if math.isinf(eps) else ctx.exp((1 - ctx.mpf(eps)) * ctx.log(p))
    return gen_binomial(base + (k - 1), k)


def _check_hypothesis(ctx, p: int, m: int, delta: float) -> None:
    # m < p^(1 - delta), decided on a rigorous enclosure
    lo, _ = _ends(ctx.exp((1 - ctx.mpf(delta)) * ctx.log(p)))
    if not m < lo:
        raise ValueError(f"hypothesis m < p^(1-delta) fails: m={m}, p={p}, delta={delta}")


def check_thm11(p, m: int, k: int, params: BoundParams, digits: int = DEFAULT_DIGITS,
                table: CountTable | None = None) -> list[BoundReport]:
    """|N*_m(k,b) - C(p-1,k)/p| against C(p^(1-eps) + mk - m, k). Descriptive only."""
    p = make_modulus(p).p
    if params.epsilon is None or params.delta is None:
        raise ValueError("check_thm11 needs both delta and epsilon")
    if not 0 <= k <= p - 1:
        raise ValueError(f"k must lie in [0, {p - 1}], got {k}")
    ctx = _ctx(digits)
    _check_hypothesis(ctx, p, m, params.delta)
    if table is None:
        table = odlyzko_stanley_tables(p, m, k)[k]
    rhs = _thm11_rhs(ctx, p, m, k, params.epsilon)
    mean = Fraction(math.comb(p - 1, k), p)
    inst = {"p": p, "m": m, "k": k, "delta": params.delta, "epsilon": params.epsilon}
    return [
        _decide("thm11", {**inst, "b": b}, _deviation(n, mean), rhs, asserted=False)
        for b, n in enumerate(table)
    ]


def _max_deviation(p: int, m: int, k: int) -> Fraction:
    table = odlyzko_stanley_tables(p, m, k)[k]
    mean = Fraction(math.comb(p - 1, k), p)
    return max(_deviation(n, mean) for n in table)


def thm11_holds(p: int, m: int, k: int, eps: float, digits: int = DEFAULT_DIGITS,
                lhs_max: Fraction | None = None) -> bool:
    """Whether the p^(1-eps) bound holds for every b at this (p, m, k, eps)."""
    if lhs_max is None:
        lhs_max = _max_deviation(p, m, k)
    _, hi = _ends(_thm11_rhs(_ctx(digits), p, m, k, eps))
    return lhs_max <= hi


def fit_epsilon(p, m: int, k: int, digits: int = DEFAULT_DIGITS, tol: float = FIT_TOLERANCE) -> float:
    """Largest eps (to within ``tol``) for which the p^(1-eps) bound holds for every b.

    The right side C(p^(1-eps) + m(k-1), k) decreases in eps towards
    C(m(k-1), k). If the largest deviation does not exceed that limit the
    bound holds for every eps and ``math.inf`` is returned. Returns 0.0 when
    it already fails at eps = 0. Otherwise the result ``e`` satisfies: holds
    at e, fails at e + tol.
    """
    p = make_modulus(p).p
    if not 0 <= k <= p - 1:
        raise ValueError(f"k must lie in [0, {p - 1}], got {k}")
    lhs_max = _max_deviation(p, m, k)
    limit = math.comb(m * (k - 1), k) if k else 1
    if lhs_max <= limit:
        return math.inf

    def holds(eps: float) -> bool:
        return thm11_holds(p, m, k, eps, digits, lhs_max)

    if not holds(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while holds(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return lo


def check_open_problem(p, m: int, k: int, epsilon: float | None = None,
                       digits: int = DEFAULT_DIGITS) -> list[BoundReport]:
    """|N*_m(k,b) - C(p-1,k)/p| against C(p^(1-eps) + k - 1, k) at the fitted eps."""
    p = make_modulus(p).p
    if not 0 <= k <= p - 1:
        raise ValueError(f"k must lie in [0, {p - 1}], got {k}")
    if epsilon is None:
        epsilon = fit_epsilon(p, m, k, digits)
    table = odlyzko_stanley_tables(p, m, k)[k]
    rhs = _open_rhs(_ctx(digits), p, k, epsilon)
    mean = Fraction(math.comb(p - 1, k), p)
    return [
        _decide("open", {"p": p, "m": m, "k": k, "b": b, "epsilon": epsilon}, _deviation(n, mean), rhs, asserted=False)
        for b, n in enumerate(table)
    ]


@dataclass(frozen=True)
class SolvabilityReport:
    """Interval -log p / log c < k < c p^delta - p^(delta-eps), and its exact verification.

    ``verified`` maps each integer k in the clamped interval to
    (min_b N*_m(k, b), positive). ``simple_*`` describe the special choice
    c = e p^-eps, i.e. 1/eps < k < (e - 1) p^(delta - eps).
    """

    p: int
    m: int
    params: BoundParams
    c: float | None
    k_low: float | None
    k_high: float | None
    ks: list[int]
    verified: dict[int, tuple[int, bool]]
    simple_low: float
    simple_high: float
    simple_ks: list[int]
    simple_verified: dict[int, tuple[int, bool]] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.ks

    @property
    def all_positive(self) -> bool:
        return all(ok for _, ok in self.verified.values())


def _integers_between(lo: float, hi: float, p: int) -> list[int]:
    start = max(1, math.floor(lo) + 1)
    stop = min(p - 1, math.ceil(hi) - 1)
    return list(range(start, stop + 1))


def solvability_range(p, m: int, params: BoundParams) -> SolvabilityReport:
    p = make_modulus(p).p
    if params.delta is None or params.epsilon is None:
        raise ValueError("solvability_range needs delta and epsilon")
    delta, eps = params.delta, params.epsilon
    c = params.c
    if c is None:
        c_alt = math.e * p**-eps
        c = c_alt if c_alt < 1 else None
    if c is not None:
        k_low = -math.log(p) / math.log(c)
        k_high = c * p**delta - p ** (delta - eps)
        ks = _integers_between(k_low, k_high, p)
    else:
        k_low = k_high = None
        ks = []
    simple_low, simple_high = 1 / eps, (math.e - 1) * p ** (delta - eps)
    simple_ks = _integers_between(simple_low, simple_high, p)
    wanted = sorted(set(ks) | set(simple_ks))
    verified_all = {}
    if wanted:
        tables = odlyzko_stanley_tables(p, m, max(wanted))
        for k in wanted:
            low = tables[k].min_count()
            verified_all[k] = (low, low > 0)
    return SolvabilityReport(
        p=p,
        m=m,
        params=params,
        c=c,
        k_low=k_low,
        k_high=k_high,
        ks=ks,
        verified={k: verified_all[k] for k in ks},
        simple_low=simple_low,
        simple_high=simple_high,
        simple_ks=simple_ks,
        simple_verified={k: verified_all[k] for k in simple_ks},
    )


def positivity(p, m: int, k: int) -> tuple[int, bool]:
    """(min_b N*_m(k, b), whether every b is reached)."""
    low = odlyzko_stanley_tables(p, m, k)[k].min_count()
    return low, low > 0
