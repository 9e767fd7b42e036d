"""Cycle types of S_k, class sizes, cycle-index sums and generalized binomials.

Everything here is exact: integers and ``fractions.Fraction``. The falling
factorial and binomial also accept any ring-like value supporting ``-`` and
``*`` (mpmath intervals in particular), which is how the bound checker gets
rigorous enclosures for real arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .report import BoundReport

__all__ = [
    "PartitionType",
    "enumerate_types",
    "partition_count",
    "class_size",
    "cycle_index_eval",
    "falling_factorial",
    "rising_factorial",
    "gen_binomial",
    "composition_weight",
    "box_identity_check",
    "sieve_identity_check",
    "cycle_index_identity_check",
]


@dataclass(frozen=True)
class PartitionType:
    """Cycle type (c_1, ..., c_k): c_i cycles of length i, sum of i*c_i equal to k."""

    k: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.k:
            raise ValueError(f"need exactly k={self.k} cycle counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("cycle counts must be nonnegative")
        if sum(i * c for i, c in enumerate(self.counts, 1)) != self.k:
            raise ValueError(f"{self.counts} is not a cycle type of S_{self.k}")

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "PartitionType":
        k = sum(parts)
        counts = [0] * k
        for part in parts:
            counts[part - 1] += 1
        return cls(k, tuple(counts))

    @property
    def cycles(self) -> int:
        """l(tau): number of cycles, fixed points included."""
        return sum(self.counts)

    @property
    def sign(self) -> int:
        return -1 if (self.k - self.cycles) % 2 else 1

    @property
    def size(self) -> int:
        return class_size(self)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.k, 0, -1) for _ in range(self.counts[i - 1]))


def _partitions(k: int, largest: int) -> Iterator[list[int]]:
    if k == 0:
        yield []
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield [first, *rest]


def enumerate_types(k: int) -> Iterator[PartitionType]:
    """Every cycle type of S_k once, lexicographically descending on (c_k, ..., c_1).

    That is the reverse-lexicographic order of partitions, starting from the
    single k-cycle and ending with the identity.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    for parts in _partitions(k, k):
        yield PartitionType.from_parts(parts)


@lru_cache(maxsize=None)
def partition_count(k: int) -> int:
    """p(k) via the Euler pentagonal recurrence."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    total, j = 0, 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > k:
            break
        sign = 1 if j % 2 else -1
        total += sign * partition_count(k - g1)
        g2 = j * (3 * j + 1) // 2
        if g2 <= k:
            total += sign * partition_count(k - g2)
        j += 1
    return total


def class_size(t: PartitionType) -> int:
    """N(c_1..c_k) = k! / prod(i^c_i * c_i!)."""
    denom = 1
    for i, c in enumerate(t.counts, 1):
        denom *= i**c * math.factorial(c)
    size, rem = divmod(math.factorial(t.k), denom)
    assert rem == 0
    return size


def cycle_index_eval(k: int, t: Sequence) -> Fraction:
    """C_k(t_1..t_k) = sum over cycle types of N(c) * prod t_i^c_i."""
    if len(t) != k:
        raise ValueError(f"need {k} arguments, got {len(t)}")
    t = [Fraction(x) for x in t]
    total = Fraction(0)
    for typ in enumerate_types(k):
        term = Fraction(class_size(typ))
        for ti, c in zip(t, typ.counts):
            if c:
                term *= ti**c
        total += term
    return total


def falling_factorial(x, k: int):
    """(x)_k = x (x-1) ... (x-k+1), with (x)_0 = 1."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if isinstance(x, float):
        x = Fraction(x)
    result = x * 0 + 1  # unit of x's ring
    for j in range(k):
        result = result * (x - j)
    return result


def rising_factorial(x, k: int):
    return falling_factorial(x + k - 1, k)


def gen_binomial(x, k: int):
    """C(x, k) = (x)_k / k!; exact for int/Fraction input."""
    ff = falling_factorial(x, k)
    if isinstance(ff, int):
        q, r = divmod(ff, math.factorial(k))
        return q if r == 0 else Fraction(ff, math.factorial(k))
    return ff / math.factorial(k)


@lru_cache(maxsize=4096)
def composition_weight(total: int, parts: int, n: int) -> int:
    """Sum over compositions total = i_1 + ... + i_parts with 1 <= i_t <= n of prod C(n, i_t).

    Equivalently the coefficient of x^total in ((1 + x)^n - 1)^parts. Parts
    above n are skipped outright since C(n, i) vanishes there anyway.
    """
    if parts == 0:
        return 1 if total == 0 else 0
    if total < parts or total > parts * n:
        return 0
    row = [0] * (total + 1)
    row[0] = 1
    for _ in range(parts):
        nxt = [0] * (total + 1)
        for s, v in enumerate(row):
            if v:
                for i in range(1, min(n, total - s) + 1):
                    nxt[s + i] += v * math.comb(n, i)
        row = nxt
    return row[total]


def _equality(name: str, instance: dict, lhs, rhs, **extra) -> BoundReport:
    return BoundReport(
        name=name,
        instance=instance,
        lhs=lhs,
        rhs=rhs,
        holds=lhs == rhs,
        slack=rhs - lhs,
        extra=extra,
    )


def box_identity_check(n: int, s: int, k: int) -> BoundReport:
    """C(ns, k) against choosing j boxes of size n first, then balls inside them."""
    if n < 1 or s < 1:
        raise ValueError("n and s must be positive")
    if not 0 <= k <= n * s:
        raise ValueError(f"k must lie in [0, {n * s}]")
    lhs = math.comb(n * s, k)
    rhs = sum(math.comb(s, j) * composition_weight(k, j, n) for j in range(0, min(s, k) + 1))
    return _equality("identity:box", {"n": n, "s": s, "k": k}, lhs, rhs)


def sieve_identity_check(n: int, k: int) -> BoundReport:
    """Signed class sum with f = 1 on D^k against the distinct-tuple count (n)_k."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    lhs = sum(t.sign * class_size(t) * n**t.cycles for t in enumerate_types(k))
    rhs = falling_factorial(n, k)
    return _equality("identity:sieve", {"n": n, "k": k}, lhs, rhs)


def cycle_index_identity_check(k: int, q) -> BoundReport:
    """C_k(q, ..., q) against the falling factorial (q + k - 1)_k."""
    q = Fraction(q)
    lhs = cycle_index_eval(k, [q] * k)
    rhs = falling_factorial(q + k - 1, k)
    return _equality("identity:cycle-index", {"k": k, "q": str(q)}, lhs, rhs)
