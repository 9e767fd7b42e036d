import math

import pytest

from waring_sieve import waring
from waring_sieve.waring import gamma_distinct, gamma_ordinary, sumset, waring_bound_suite

from conftest import brute_gamma, brute_os, divisors, small_primes


def test_examples():
    assert gamma_ordinary(5, 2).value == 2
    assert gamma_ordinary(5, 4).value == 4
    assert gamma_ordinary(5, 4).bound_checks["cauchy"]


def test_distinct_nonexistence():
    r = gamma_distinct(5, 2)
    assert r.value is None and not r.exists
    assert r.coverage == {1: {0, 2, 3}, 2: {1, 4}, 3: {0, 2, 3}, 4: {1, 2, 3, 4}}
    assert r.row()["value"] == "NONE"


@pytest.mark.parametrize("p", small_primes(60))
def test_gamma_against_bruteforce(p):
    for m in range(1, p):
        assert gamma_ordinary(p, m).value == brute_gamma(p, m)


@pytest.mark.parametrize("p", small_primes(40))
def test_gcd_reduction_and_monotone(p):
    for m in range(1, 2 * p):
        r = gamma_ordinary(p, m)
        assert r.value == gamma_ordinary(p, math.gcd(m, p - 1)).value
        ks = sorted(r.coverage)
        for a, b in zip(ks, ks[1:]):
            assert r.coverage[b] <= r.coverage[a]


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_distinct_against_counts(p):
    for m in divisors(p - 1):
        r = gamma_distinct(p, m)
        for k, missing in r.coverage.items():
            assert missing == {b for b, c in enumerate(brute_os(p, m, k)) if c == 0}
        if r.value is not None:
            assert gamma_ordinary(p, m).value <= r.value
            assert r.bound_checks["ordering"]


@pytest.mark.parametrize("p", [7, 11, 13])
def test_distinct_complement_symmetry(p):
    for m in divisors(p - 1):
        T = (p - 1) % p if m % (p - 1) == 0 else 0
        cov = gamma_distinct(p, m).coverage
        for k in range(1, p - 1):
            assert cov[p - 1 - k] == {(T - b) % p for b in cov[k]}


def test_exclude_zero_variant():
    r = gamma_ordinary(7, 3, include_zero=False)
    assert r.value == 6 and not r.include_zero
    r = gamma_ordinary(5, 4, include_zero=False)
    # sums of k ones are just {k}: never all of F_5
    assert r.value is None


def test_sumset_fft_path(monkeypatch):
    monkeypatch.setattr(waring, "FFT_THRESHOLD", 0)
    p = 101
    steps = sorted({pow(x, 2, p) for x in range(p)})
    a = sum(1 << s for s in steps)
    expect = sum(1 << b for b in {(x + y) % p for x in steps for y in steps})
    assert sumset(a, steps * 2, p) == expect
    assert gamma_ordinary(p, 2).value == 2


def test_cauchy_suite_p200():
    suite = waring_bound_suite(200, distinct=False)
    assert suite.ok and not suite.cauchy_violations
    assert all(r.m < r.p - 1 and (r.p - 1) % r.m == 0 for r in suite.rows)


def test_suite_with_distinct():
    suite = waring_bound_suite(23)
    assert suite.ok
    row = next(r for r in suite.rows if (r.p, r.m) == (5, 2))
    assert row.gamma == 2 and row.gamma_distinct is None and row.row()["gamma_distinct"] == "NONE"
    assert row.prop13_bound == pytest.approx(4 ** (1 / (1 - math.log(2) / math.log(5))))


def test_distinct_p7_m1():
    assert gamma_distinct(7, 1).value == 2
