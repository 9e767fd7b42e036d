"""Independent oracles: direct enumeration over subsets, no shared code with the counters."""
from __future__ import annotations

import itertools
import math

import pytest


def brute_counts(p: int, values, k: int) -> list[int]:
    """counts[b] = #{k-subsets S of positions : sum of values over S = b mod p}."""
    counts = [0] * p
    for combo in itertools.combinations(values, k):
        counts[sum(combo) % p] += 1
    return counts


def brute_os(p: int, m: int, k: int) -> list[int]:
    return brute_counts(p, [pow(x, m, p) for x in range(1, p)], k)


def brute_gamma(p: int, m: int) -> int:
    powers = {pow(x, m, p) for x in range(p)}
    reach, k = set(powers), 1
    while len(reach) < p:
        reach = {(a + h) % p for a in reach for h in powers}
        k += 1
    return k


def small_primes(limit: int) -> list[int]:
    return [n for n in range(3, limit + 1) if all(n % d for d in range(2, math.isqrt(n) + 1))]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@pytest.fixture
def oracle():
    return brute_os
