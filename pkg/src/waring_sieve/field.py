"""Prime-field arithmetic, m-th power residues and additive character sums.

Character sums are evaluated in double precision. Every numeric result carries
an explicit absolute error bound so that the inequality checks downstream can
decide verdicts conservatively.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .domain import ValuedDomain

__all__ = [
    "NotPrimeError",
    "PrimeModulus",
    "PowerResidueStructure",
    "CharacterSumProfile",
    "make_modulus",
    "is_prime",
    "power_structure",
    "monomial_exp_sum",
    "monomial_exp_sum_error",
    "character_profile",
    "divisors",
]

WORD_LIMIT = 1 << 63
UNIT_ROUNDOFF = 2.0**-53

# Domains with more (a, x) pairs than this go through the FFT path.
DIRECT_PROFILE_LIMIT = 4_000_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NotPrimeError(ValueError):
    """Raised for a modulus that is not an odd prime."""

    def __init__(self, p: int, divisor: int | None = None, reason: str = "composite"):
        self.p = p
        self.divisor = divisor
        msg = f"{p} is not an odd prime ({reason}"
        if divisor is not None:
            msg += f", divisible by {divisor}"
        super().__init__(msg + ")")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _small_divisor(n: int, limit: int = 1_000_000) -> int | None:
    for q in range(3, min(math.isqrt(n), limit) + 1, 2):
        if n % q == 0:
            return q
    return None


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if p < 3:
            raise NotPrimeError(p, 2 if p == 2 else None, "p must be an odd prime >= 3")
        if p >= WORD_LIMIT:
            raise ValueError(f"p={p} is outside the machine-word range")
        if p % 2 == 0:
            raise NotPrimeError(p, 2, "even")
        if not is_prime(p):
            raise NotPrimeError(p, _small_divisor(p))

    def __int__(self):
        return self.p

    def __index__(self):
        return self.p

    def __str__(self):
        return str(self.p)


def make_modulus(p: int | PrimeModulus) -> PrimeModulus:
    if isinstance(p, PrimeModulus):
        return p
    return PrimeModulus(int(p))


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass(frozen=True)
class PowerResidueStructure:
    """The image H = {x^m : x in F_p*} together with m, d = gcd(m, p-1), s = |H|."""

    p: PrimeModulus
    m: int
    d: int
    s: int
    members: tuple[int, ...]

    def __contains__(self, h: int) -> bool:
        return h % self.p.p in self._member_set

    @property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)


@lru_cache(maxsize=256)
def _power_structure(p: int, m: int) -> PowerResidueStructure:
    mod = make_modulus(p)
    d = math.gcd(m, p - 1)
    members = tuple(sorted({pow(x, m, p) for x in range(1, p)}))
    s = (p - 1) // d
    assert len(members) == s
    return PowerResidueStructure(mod, m, d, s, members)


def power_structure(p: int | PrimeModulus, m: int) -> PowerResidueStructure:
    if m < 1:
        raise ValueError(f"exponent m must be positive, got {m}")
    return _power_structure(int(p), int(m))


@lru_cache(maxsize=64)
def _unit_circle(p: int) -> tuple[np.ndarray, np.ndarray]:
    j = np.arange(p, dtype=np.float64)
    theta = 2.0 * np.pi * j / p
    return np.cos(theta), np.sin(theta)


def monomial_exp_sum_error(p: int) -> float:
    """Absolute error bound for :func:`monomial_exp_sum` (far below 1e-9 * p)."""
    # p-1 unit terms, each component off by <= 2 ulp; fsum adds one rounding.
    return 8.0 * UNIT_ROUNDOFF * p


def monomial_exp_sum(p: int | PrimeModulus, m: int, a: int) -> float:
    """|sum_{x in F_p*} e_p(a x^m)| with correctly rounded (fsum) accumulation."""
    p = int(make_modulus(p))
    if m < 1:
        raise ValueError(f"exponent m must be positive, got {m}")
    if a % p == 0:
        raise ValueError("a must be nonzero mod p (principal character excluded)")
    cos_t, sin_t = _unit_circle(p)
    idx = [a * pow(x, m, p) % p for x in range(1, p)]
    re = math.fsum(cos_t[i] for i in idx)
    im = math.fsum(sin_t[i] for i in idx)
    return math.hypot(re, im)


@dataclass(frozen=True)
class CharacterSumProfile:
    """|sum_x mu(x) e_p(a x)| for every a in 1..p-1, and its maximum phi.

    ``magnitudes[a - 1]`` holds the value for character a.
    """

    p: PrimeModulus
    domain: "ValuedDomain"
    magnitudes: np.ndarray = field(repr=False)
    phi: float
    argmax: int
    error_bound: float
    method: str

    def magnitude(self, a: int) -> float:
        a %= self.p.p
        if a == 0:
            raise ValueError("principal character excluded")
        return float(self.magnitudes[a - 1])


def _profile_error(weight: int, n_terms: int, method: str) -> float:
    depth = max(1, math.ceil(math.log2(max(n_terms, 2))))
    if method == "direct":
        # twiddle error (2u per term) + pairwise summation + final hypot
        return 2.0 * weight * UNIT_ROUNDOFF * (depth + 5)
    # Bluestein/radix FFT: O(u log n) relative to the l1 mass, generous constant.
    return 16.0 * weight * UNIT_ROUNDOFF * (depth + 5)


def character_profile(domain: "ValuedDomain", method: str = "auto") -> CharacterSumProfile:
    """Magnitudes of the domain's sum under every nontrivial additive character.

    ``method`` is "direct" (pairwise summation of explicit terms), "fft", or
    "auto", which picks direct summation unless the (a, x) grid is large.
    """
    if not domain.items:
        raise ValueError("empty domain")
    p = domain.p.p
    values = np.array([v for v, _ in domain.items], dtype=np.int64)
    weights = np.array([mu for _, mu in domain.items], dtype=np.float64)
    if method == "auto":
        method = "direct" if (p - 1) * len(values) <= DIRECT_PROFILE_LIMIT else "fft"
    if method == "direct":
        cos_t, sin_t = _unit_circle(p)
        mags = np.empty(p - 1, dtype=np.float64)
        chunk = max(1, DIRECT_PROFILE_LIMIT // (4 * len(values)))
        for start in range(1, p, chunk):
            a = np.arange(start, min(p, start + chunk), dtype=np.int64)
            idx = np.outer(a, values) % p
            re = np.sum(cos_t[idx] * weights, axis=1)
            im = np.sum(sin_t[idx] * weights, axis=1)
            mags[start - 1 : start - 1 + len(a)] = np.hypot(re, im)
    elif method == "fft":
        dense = np.zeros(p, dtype=np.float64)
        dense[values] = weights
        mags = np.abs(np.fft.fft(dense))[1:]
    else:
        raise ValueError(f"unknown method {method!r}")
    i = int(np.argmax(mags))
    return CharacterSumProfile(
        p=domain.p,
        domain=domain,
        magnitudes=mags,
        phi=float(mags[i]),
        argmax=i + 1,
        error_bound=_profile_error(domain.n, len(values), method),
        method=method,
    )
