"""Ordinary and distinct Waring numbers mod p.

gamma(m, p): least k such that every residue is a sum of k m-th powers
(0 = 0^m allowed, which makes the reachable sets S_1 within S_2 within ...).
gamma'(m, p): least k such that every residue is a sum of m-th powers of k
pairwise distinct elements of F_p*; it need not exist.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .counters import odlyzko_stanley_tables
from .field import divisors, is_prime, make_modulus

__all__ = [
    "WaringResult",
    "gamma_ordinary",
    "gamma_distinct",
    "WaringSuiteRow",
    "WaringSuite",
    "waring_bound_suite",
    "sumset",
    "FFT_THRESHOLD",
]

FFT_THRESHOLD = 10_000


@dataclass(frozen=True)
class WaringResult:
    """``coverage[k]`` is the set of residues NOT reachable with k terms."""

    kind: str
    p: int
    m: int
    value: int | None
    coverage: dict[int, frozenset[int]]
    bound_checks: dict[str, bool | None] = field(default_factory=dict)
    include_zero: bool = True

    @property
    def exists(self) -> bool:
        return self.value is not None

    def row(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "m": self.m,
            "value": self.value if self.value is not None else "NONE",
            "coverage": {str(k): sorted(v) for k, v in sorted(self.coverage.items())},
            "include_zero": self.include_zero,
            **{f"check_{k}": v for k, v in self.bound_checks.items()},
        }


def _mask_to_set(mask: int, p: int) -> frozenset[int]:
    return frozenset(b for b in range(p) if not mask >> b & 1)


def _sumset_bits(a: int, steps: list[int], p: int) -> int:
    full = (1 << p) - 1
    out = 0
    for s in steps:
        out |= ((a << s) | (a >> (p - s))) & full if s else a
    return out


def _sumset_fft(a: int, steps: list[int], p: int) -> int:
    va = np.array([(a >> b) & 1 for b in range(p)], dtype=np.float64)
    vb = np.zeros(p)
    vb[steps] = 1.0
    conv = np.fft.irfft(np.fft.rfft(va, 2 * p) * np.fft.rfft(vb, 2 * p), 2 * p)
    hit = conv[:p] + np.concatenate([conv[p : 2 * p - 1], [0.0]])
    return sum(1 << b for b in np.nonzero(hit > 0.5)[0].tolist())


def sumset(a: int, steps: list[int], p: int) -> int:
    """Bitmask of A + B mod p, for A given as a bitmask and B as a list of residues.

    Bitset shifts up to ``FFT_THRESHOLD``; above it a float FFT convolution of
    the indicator vectors (counts are integers < p, so rounding at 0.5 is exact).
    """
    if p > FFT_THRESHOLD and len(steps) > 64:
        return _sumset_fft(a, steps, p)
    return _sumset_bits(a, steps, p)


def gamma_ordinary(p, m: int, include_zero: bool = True, max_k: int | None = None) -> WaringResult:
    """gamma(m, p) by sumset closure.

    With ``include_zero=False`` the k-term sums use nonzero m-th powers only;
    that sequence of reachable sets is eventually periodic, and the result
    is None if it cycles without covering F_p.
    """
    p = make_modulus(p).p
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    powers = sorted({pow(x, m, p) for x in range(1, p)} | ({0} if include_zero else set()))
    full = (1 << p) - 1
    current = sum(1 << h for h in powers)
    coverage = {1: _mask_to_set(current, p)}
    seen = {current: 1}
    k, value = 1, None
    limit = max_k if max_k is not None else 2 * p + 2
    while True:
        if current == full:
            value = k
            break
        if k >= limit:
            break
        current = sumset(current, powers, p)
        k += 1
        coverage[k] = _mask_to_set(current, p)
        if current in seen and current != full:
            break
        seen[current] = k
    checks = {"cauchy": value is not None and value <= m} if include_zero else {}
    return WaringResult("ordinary", p, m, value, coverage, checks, include_zero)


def gamma_distinct(p, m: int, algo: str = "newton") -> WaringResult:
    """gamma'(m, p) from the exact count tables N*_m(k, .) for every k = 1..p-1."""
    p = make_modulus(p).p
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    tables = odlyzko_stanley_tables(p, m, p - 1, algo)
    coverage = {k: tables[k].unreachable() for k in range(1, p)}
    value = next((k for k in range(1, p) if not coverage[k]), None)
    checks: dict[str, bool | None] = {"ordering": None}
    if value is not None:
        checks["ordering"] = gamma_ordinary(p, m).value <= value
    return WaringResult("distinct", p, m, value, coverage, checks)


@dataclass(frozen=True)
class WaringSuiteRow:
    p: int
    m: int
    gamma: int
    gamma_distinct: int | None
    cauchy_ok: bool
    ordering_ok: bool | None
    delta: float
    prop13_bound: float
    distinct_computed: bool = True

    def row(self) -> dict:
        return {
            "kind": "suite",
            "p": self.p,
            "m": self.m,
            "gamma": self.gamma,
            "gamma_distinct": self._distinct_value(),
            "cauchy_ok": self.cauchy_ok,
            "ordering_ok": self.ordering_ok,
            "delta": format(self.delta, ".15g"),
            "prop13_bound": format(self.prop13_bound, ".15g"),
        }

    def _distinct_value(self):
        if not self.distinct_computed:
            return None
        return self.gamma_distinct if self.gamma_distinct is not None else "NONE"


@dataclass(frozen=True)
class WaringSuite:
    rows: list[WaringSuiteRow]

    @property
    def cauchy_violations(self) -> list[WaringSuiteRow]:
        return [r for r in self.rows if not r.cauchy_ok]

    @property
    def ordering_violations(self) -> list[WaringSuiteRow]:
        return [r for r in self.rows if r.ordering_ok is False]

    @property
    def ok(self) -> bool:
        return not self.cauchy_violations and not self.ordering_violations


def suite_cell(p: int, m: int, distinct: bool = True) -> WaringSuiteRow:
    g = gamma_ordinary(p, m).value
    gd = gamma_distinct(p, m).value if distinct else None
    # largest delta with m < p^(1 - delta), i.e. the supremum
    delta = 1 - math.log(m) / math.log(p)
    return WaringSuiteRow(
        p=p,
        m=m,
        gamma=g,
        gamma_distinct=gd,
        cauchy_ok=g <= m,
        ordering_ok=None if gd is None else g <= gd,
        delta=delta,
        prop13_bound=4 ** (1 / delta),
        distinct_computed=distinct,
    )


def suite_cells(p_max: int, p_min: int = 3) -> list[tuple[int, int]]:
    """(p, m) with p an odd prime in [p_min, p_max], m | p-1 and m < p-1."""
    return [
        (p, m)
        for p in range(max(3, p_min), p_max + 1)
        if is_prime(p)
        for m in divisors(p - 1)
        if m < p - 1
    ]


def waring_bound_suite(p_max: int, distinct: bool = True, p_min: int = 3) -> WaringSuite:
    """gamma and gamma' side by side for every cell; Cauchy gamma <= m and gamma <= gamma' checked.

    ``prop13_bound`` is 4^(1/delta) with delta = 1 - log m / log p, recorded
    for comparison only.
    """
    if p_max < 3:
        raise ValueError("p_max must be at least 3")
    return WaringSuite([suite_cell(p, m, distinct) for p, m in suite_cells(p_max, p_min)])
