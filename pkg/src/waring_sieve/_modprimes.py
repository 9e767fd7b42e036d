"""Word-size primes and CRT reconstruction for the compiled kernels."""
from __future__ import annotations

from .field import is_prime

_PRIMES: list[int] = []
TOP = (1 << 62) - 1


def word_primes(count: int) -> list[int]:
    """The ``count`` largest primes below 2^62, descending."""
    if len(_PRIMES) < count:
        q = _PRIMES[-1] - 2 if _PRIMES else TOP
        while len(_PRIMES) < count:
            if is_prime(q):
                _PRIMES.append(q)
            q -= 2
    return _PRIMES[:count]


def primes_for_bound(bound: int) -> list[int]:
    """Enough word primes that their product exceeds ``bound``."""
    count = max(1, -(-(bound.bit_length() + 1) // 61))
    while True:
        primes = word_primes(count)
        prod = 1
        for q in primes:
            prod *= q
        if prod > bound:
            return primes
        count += 1


def garner_constants(primes: list[int]) -> list[list[int]]:
    """inv[i][j] = primes[j]^-1 mod primes[i] for j < i."""
    return [[pow(primes[j], -1, primes[i]) for j in range(i)] for i in range(len(primes))]
