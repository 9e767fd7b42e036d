import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waring_sieve.domain import ValuedDomain
from waring_sieve.field import (
    NotPrimeError,
    PrimeModulus,
    character_profile,
    divisors,
    is_prime,
    make_modulus,
    monomial_exp_sum,
    monomial_exp_sum_error,
    power_structure,
)

from conftest import small_primes


def test_is_prime_matches_sieve():
    primes = set(small_primes(2000)) | {2}
    assert all(is_prime(n) == (n in primes) for n in range(2000))


def test_large_prime_and_carmichael():
    assert is_prime(2**61 - 1)
    assert not is_prime(561)
    assert not is_prime(3215031751)


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, 2**63 + 1])
def test_modulus_rejects(bad):
    with pytest.raises(ValueError):
        PrimeModulus(bad)


def test_not_prime_reports_divisor():
    with pytest.raises(NotPrimeError) as info:
        make_modulus(91)
    assert info.value.divisor in (7, 13)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


@pytest.mark.parametrize("p", [5, 7, 11, 13, 31])
def test_power_structure_against_direct(p):
    for m in range(1, 2 * p):
        ps = power_structure(p, m)
        image = sorted({pow(x, m, p) for x in range(1, p)})
        assert list(ps.members) == image
        assert ps.d == math.gcd(m, p - 1)
        assert ps.s * ps.d == p - 1


def test_power_structure_examples():
    ps = power_structure(5, 2)
    assert (ps.d, ps.s, ps.members) == (2, 2, (1, 4))
    assert power_structure(7, 6).members == (1,)


def _direct_sum(p, items, a):
    return abs(sum(mu * cmath.exp(2j * math.pi * a * v / p) for v, mu in items))


@pytest.mark.parametrize("p,m", [(5, 1), (5, 2), (7, 3), (13, 4), (31, 5)])
def test_profile_against_direct(p, m):
    D = ValuedDomain.power_image(p, m)
    prof = character_profile(D)
    for a in range(1, p):
        assert abs(prof.magnitude(a) - _direct_sum(p, D.items, a)) <= prof.error_bound + 1e-12
    assert prof.phi == pytest.approx(max(_direct_sum(p, D.items, a) for a in range(1, p)), abs=1e-12)


def test_profile_examples():
    assert character_profile(ValuedDomain.units(5)).phi == pytest.approx(1.0, abs=1e-12)
    golden = (1 + 5**0.5) / 2
    assert character_profile(ValuedDomain.from_set(5, [1, 4])).phi == pytest.approx(golden, abs=1e-12)


def test_fft_and_direct_agree():
    D = ValuedDomain.power_image(101, 4)
    a = character_profile(D, "direct")
    b = character_profile(D, "fft")
    assert np.max(np.abs(a.magnitudes - b.magnitudes)) <= a.error_bound + b.error_bound


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(small_primes(60)), st.integers(1, 200), st.data())
def test_monomial_sum_matches_profile(p, m, data):
    a = data.draw(st.integers(1, p - 1))
    prof = character_profile(ValuedDomain.power_image(p, m))
    err = monomial_exp_sum_error(p) + prof.error_bound
    assert abs(monomial_exp_sum(p, m, a) - prof.magnitude(a)) <= err


def test_monomial_sum_rejects_zero_frequency():
    with pytest.raises(ValueError):
        monomial_exp_sum(7, 2, 0)


def test_gauss_sum_modulus():
    # |sum_x e(a x^2)| over F_p* is |G - 1| where |G| = sqrt(p)
    for p in small_primes(100):
        val = monomial_exp_sum(p, 2, 1)
        assert val <= math.sqrt(p) + 1 + 1e-9
        assert val >= math.sqrt(p) - 1 - 1e-9
