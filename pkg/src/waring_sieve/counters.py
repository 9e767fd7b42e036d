"""Exact counts N(k, b, D) of k-subsets of a valued domain with prescribed sum.

Three algorithms are kept side by side and cross-checked:

* ``count_dp``: subset-sum dynamic program, one multiplicity slot at a time.
* ``count_genfun``: product of the factors (1 + t X^v)^mu in
  (Z[t]/t^(K+1))[X]/(X^p - 1), built as a balanced product tree.
* ``count_newton``: power sums P_i = sum mu X^(i v) and the signed Newton
  recurrence k e_k = sum_i (-1)^(i-1) P_i e_(k-i), i.e. the distinct-coordinate
  sieve grouped by cycle type.

The Odlyzko-Stanley counts N*_m(k, b) are the instance D = {(h, d) : h in H}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .combinatorics import composition_weight
from .convolution import cyclic_convolve, cyclic_convolve_2d, cyclic_dot
from .domain import ValuedDomain
from .field import make_modulus, power_structure

__all__ = [
    "ValuedDomain",
    "CountTable",
    "GroupRingPoly",
    "IntegralityError",
    "count_dp",
    "count_genfun",
    "count_newton",
    "count_tables",
    "ALGORITHMS",
    "count_odlyzko_stanley",
    "odlyzko_stanley_tables",
    "total_count",
    "power_sum_constant",
    "AuditRow",
    "decomposition_audit",
]


class IntegralityError(ArithmeticError):
    """A Newton layer produced a non-integral coefficient."""


@dataclass(frozen=True)
class CountTable:
    """counts[b] = number of k-subsets with sum b, for every residue b."""

    k: int
    counts: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.counts)

    def __getitem__(self, b: int) -> int:
        return self.counts[b % self.p]

    def __iter__(self):
        return iter(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self, nonzero: bool = True) -> dict[int, int]:
        return {b: c for b, c in enumerate(self.counts) if c or not nonzero}

    def unreachable(self) -> frozenset[int]:
        return frozenset(b for b, c in enumerate(self.counts) if c == 0)

    def min_count(self) -> int:
        return min(self.counts)


class GroupRingPoly:
    """Element of Q[Z/p]: an exact coefficient vector indexed by residues mod p."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence):
        if len(coeffs) != p:
            raise ValueError(f"need {p} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, p: int) -> "GroupRingPoly":
        return cls(p, [0] * p)

    @classmethod
    def monomial(cls, p: int, v: int, c=1) -> "GroupRingPoly":
        coeffs = [0] * p
        coeffs[v % p] = c
        return cls(p, coeffs)

    def __eq__(self, other):
        return isinstance(other, GroupRingPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        terms = {i: c for i, c in enumerate(self.coeffs) if c}
        return f"GroupRingPoly(p={self.p}, {terms})"

    def _check(self, other: "GroupRingPoly"):
        if self.p != other.p:
            raise ValueError("mismatched moduli")

    def __add__(self, other):
        self._check(other)
        return GroupRingPoly(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return GroupRingPoly(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return GroupRingPoly(self.p, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, GroupRingPoly):
            return GroupRingPoly(self.p, [a * other for a in self.coeffs])
        self._check(other)
        da, a = self._scaled()
        db, b = other._scaled()
        prod = cyclic_convolve(a, b)
        if da * db == 1:
            return GroupRingPoly(self.p, prod)
        return GroupRingPoly(self.p, [Fraction(x, da * db) for x in prod])

    __rmul__ = __mul__

    def __truediv__(self, c):
        return GroupRingPoly(self.p, [Fraction(a) / c for a in self.coeffs])

    def _scaled(self) -> tuple[int, list[int]]:
        """(D, integer vector) with self = vector / D."""
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = math.lcm(den, c.denominator)
        if den == 1:
            return 1, [int(c) for c in self.coeffs]
        return den, [int(c * den) for c in self.coeffs]

    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) or c.denominator == 1 for c in self.coeffs)

    def to_ints(self) -> list[int]:
        if not self.is_integral():
            bad = next(c for c in self.coeffs if isinstance(c, Fraction) and c.denominator != 1)
            raise IntegralityError(f"non-integral coefficient {bad}")
        return [int(c) for c in self.coeffs]


def _check_kmax(D: ValuedDomain, k_max: int) -> None:
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    if k_max > D.n:
        raise ValueError(f"k_max={k_max} exceeds the domain size n={D.n}")


def _tables(rows: list[list[int]]) -> list[CountTable]:
    return [CountTable(k, tuple(row)) for k, row in enumerate(rows)]


def count_dp(D: ValuedDomain, k_max: int) -> list[CountTable]:
    """Subset-sum DP: each multiplicity slot multiplies by (1 + t X^v)."""
    _check_kmax(D, k_max)
    return _tables(kernels.subset_table(D.slots(), D.p.p, k_max))


def _factor(v: int, mu: int, p: int, k_max: int) -> list[list[int]]:
    rows = []
    for j in range(min(mu, k_max) + 1):
        row = [0] * p
        row[j * v % p] = math.comb(mu, j)
        rows.append(row)
    return rows


def count_genfun(D: ValuedDomain, k_max: int) -> list[CountTable]:
    """Coefficients of prod (1 + t X^v)^mu, multiplied out as a balanced product tree."""
    _check_kmax(D, k_max)
    p = D.p.p
    level = [_factor(v, mu, p, k_max) for v, mu in D.items]
    if not level:
        level = [[[1] + [0] * (p - 1)]]
    while len(level) > 1:
        nxt = [cyclic_convolve_2d(a, b, k_max) for a, b in zip(level[0::2], level[1::2])]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    rows = level[0]
    rows += [[0] * p for _ in range(k_max + 1 - len(rows))]
    return _tables(rows[: k_max + 1])


def _power_sums(D: ValuedDomain, k_max: int) -> list[list[int]]:
    p = D.p.p
    sums = [None]
    for i in range(1, k_max + 1):
        P = [0] * p
        for v, mu in D.items:
            P[i * v % p] += mu
        sums.append(P)
    return sums


def count_newton(D: ValuedDomain, k_max: int) -> list[CountTable]:
    """Elementary layers from power sums by k e_k = sum_i (-1)^(i-1) P_i * e_(k-i).

    Each layer is formed over Q and must come out integral; a non-integral
    coefficient raises :class:`IntegralityError`.
    """
    _check_kmax(D, k_max)
    p = D.p.p
    P = _power_sums(D, k_max)
    e = [[1] + [0] * (p - 1)]
    for k in range(1, k_max + 1):
        odd = [(P[i], e[k - i]) for i in range(1, k + 1, 2)]
        even = [(P[i], e[k - i]) for i in range(2, k + 1, 2)]
        num = cyclic_dot(odd)
        if even:
            num = [x - y for x, y in zip(num, cyclic_dot(even))]
        layer = GroupRingPoly(p, num) * Fraction(1, k)
        try:
            e.append(layer.to_ints())
        except IntegralityError as exc:
            raise IntegralityError(f"layer k={k}: {exc}") from None
    return _tables(e)


ALGORITHMS = {"dp": count_dp, "genfun": count_genfun, "newton": count_newton}


def count_tables(D: ValuedDomain, k_max: int, algo: str = "newton") -> list[CountTable]:
    try:
        fn = ALGORITHMS[algo]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {sorted(ALGORITHMS)}") from None
    return fn(D, k_max)


def odlyzko_stanley_tables(p, m: int, k_max: int, algo: str = "newton") -> list[CountTable]:
    """N*_m(k, .) for k = 0..k_max."""
    mod = make_modulus(p)
    if not 0 <= k_max <= mod.p - 1:
        raise ValueError(f"k must lie in [0, {mod.p - 1}], got {k_max}")
    return count_tables(ValuedDomain.power_image(mod, m), k_max, algo)


def count_odlyzko_stanley(p, m: int, k: int, algo: str = "newton") -> CountTable:
    """N*_m(k, b) for every b: k-subsets S of F_p* with sum of x^m over S equal to b."""
    return odlyzko_stanley_tables(p, m, k, algo)[k]


def total_count(p, m: int) -> list[int]:
    """N*_m(b) over all subset sizes: coefficients of prod_{x in F_p*} (1 + X^(x^m))."""
    D = ValuedDomain.power_image(p, m)
    return kernels.subset_totals(D.slots(), D.p.p)


def power_sum_constant(p, m: int) -> int:
    """T = sum_{x in F_p*} x^m mod p: p-1 when (p-1) | m, else 0."""
    p = int(make_modulus(p))
    return (p - 1) % p if m % (p - 1) == 0 else 0


@dataclass(frozen=True)
class AuditRow:
    b: int
    claimed: int
    true: int

    @property
    def diff(self) -> int:
        return self.claimed - self.true


def decomposition_audit(p, m: int, k: int) -> list[AuditRow]:
    """Compare the lifting formula sum_j M(j, b) W(k, j, m) with the true N*_m(k, b).

    M(j, b) counts j-subsets of H summing to b, and W(k, j, m) sums
    prod C(m, i_t) over compositions of k into j positive parts. The rows
    only report differences; nothing here asserts that they vanish.
    """
    mod = make_modulus(p)
    p = mod.p
    if m < 1 or (p - 1) % m:
        d = math.gcd(m, p - 1)
        raise ValueError(f"m={m} does not divide p-1={p - 1}; reduce it to gcd(m, p-1) = {d}")
    if not 0 <= k <= p - 1:
        raise ValueError(f"k must lie in [0, {p - 1}], got {k}")
    s = power_structure(mod, m).s
    M = count_newton(ValuedDomain.subgroup(mod, m), min(k, s))
    true = count_odlyzko_stanley(mod, m, k)
    rows = []
    for b in range(p):
        claimed = sum(M[j][b] * composition_weight(k, j, m) for j in range(len(M)))
        rows.append(AuditRow(b, claimed, true[b]))
    return rows
