import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waring_sieve import kernels
from waring_sieve.counters import (
    ALGORITHMS,
    CountTable,
    GroupRingPoly,
    IntegralityError,
    count_odlyzko_stanley,
    count_tables,
    decomposition_audit,
    odlyzko_stanley_tables,
    power_sum_constant,
    total_count,
)
from waring_sieve.domain import ValuedDomain
from waring_sieve.field import NotPrimeError, power_structure

from conftest import brute_counts, brute_os, divisors, small_primes

ALGOS = sorted(ALGORITHMS)


@pytest.mark.parametrize("algo", ALGOS)
@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_bruteforce_oracle(p, algo):
    for m in range(1, p):
        tables = odlyzko_stanley_tables(p, m, p - 1, algo)
        for k in range(p):
            assert list(tables[k]) == brute_os(p, m, k), (p, m, k)


def test_pinned_values():
    assert count_odlyzko_stanley(5, 2, 2).as_dict() == {0: 4, 2: 1, 3: 1}
    assert count_odlyzko_stanley(5, 1, 2).as_dict() == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}
    assert count_odlyzko_stanley(7, 6, 3)[3] == 20
    assert count_odlyzko_stanley(5, 2, 0).counts == (1, 0, 0, 0, 0)
    assert count_odlyzko_stanley(5, 1, 4).counts == (1, 0, 0, 0, 0)


@pytest.mark.parametrize("algo", ALGOS)
def test_random_domains_with_multiplicity(algo):
    rng = random.Random(11)
    for _ in range(40):
        p = rng.choice([5, 7, 11, 13, 17])
        vals = [rng.randrange(p) for _ in range(rng.randint(0, 12))]
        D = ValuedDomain.from_values(p, vals, subset_of_units=False)
        tables = count_tables(D, D.n, algo)
        for k in range(D.n + 1):
            assert list(tables[k]) == brute_counts(p, D.slots(), k)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13, 17]), st.data())
def test_algorithms_agree_on_subsets(p, data):
    vals = data.draw(st.sets(st.integers(1, p - 1), min_size=1))
    D = ValuedDomain.from_set(p, vals)
    results = [count_tables(D, D.n, a) for a in ALGOS]
    assert results[0] == results[1] == results[2]


@pytest.mark.parametrize("p", small_primes(23))
def test_conservation(p):
    for m in divisors(p - 1):
        tables = odlyzko_stanley_tables(p, m, p - 1, "dp")
        for k, t in enumerate(tables):
            assert t.total == math.comb(p - 1, k)
        totals = total_count(p, m)
        assert sum(totals) == 2 ** (p - 1)
        assert totals == [sum(t[b] for t in tables) for b in range(p)]


@pytest.mark.parametrize("p", [7, 11, 13, 17])
def test_scaling_symmetry(p):
    # multiplying every x by y permutes F_p* and scales the target by y^m
    for m in divisors(p - 1):
        H = power_structure(p, m).members
        for k in range(p):
            t = count_odlyzko_stanley(p, m, k)
            for h in H:
                assert all(t[b] == t[h * b % p] for b in range(p))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_complement_symmetry(p):
    for m in range(1, p + 2):
        T = power_sum_constant(p, m)
        assert T == sum(pow(x, m, p) for x in range(1, p)) % p
        tables = odlyzko_stanley_tables(p, m, p - 1)
        for k in range(p):
            assert all(tables[k][b] == tables[p - 1 - k][T - b] for b in range(p))


def test_gcd_reduction():
    for p in (7, 11, 13):
        for m in range(1, 3 * p):
            d = math.gcd(m, p - 1)
            assert odlyzko_stanley_tables(p, m, p - 1) == odlyzko_stanley_tables(p, d, p - 1)


def test_backend_independence():
    if len(kernels.available_backends()) < 2:
        pytest.skip("compiled backend not built")
    D = ValuedDomain.power_image(101, 4)
    out = []
    for name in kernels.available_backends():
        with kernels.use_backend(name):
            out.append((count_tables(D, 20, "dp"), total_count(101, 4)))
    assert out[0] == out[1]


def test_total_examples():
    assert total_count(5, 4) == [1, 4, 6, 4, 1]
    assert sum(total_count(5, 2)) == 16


def test_preconditions():
    with pytest.raises(NotPrimeError):
        count_odlyzko_stanley(9, 2, 2)
    with pytest.raises(ValueError):
        count_odlyzko_stanley(5, 2, 5)
    with pytest.raises(ValueError):
        count_tables(ValuedDomain.units(5), 2, "fft")


def test_count_table_api():
    t = CountTable(2, (4, 0, 1, 1, 0))
    assert t.p == 5 and t.total == 6 and t[7] == 1
    assert t.unreachable() == {1, 4}
    assert t.min_count() == 0


def test_group_ring_integrality():
    a = GroupRingPoly(3, [1, 2, 0]) / 2
    assert not a.is_integral()
    with pytest.raises(IntegralityError):
        a.to_ints()
    assert (a * 2).to_ints() == [1, 2, 0]
    sq = GroupRingPoly(3, [1, 1, 0]) * GroupRingPoly(3, [1, 1, 0])
    assert sq.to_ints() == [1, 2, 1]


def test_audit_example():
    rows = decomposition_audit(5, 2, 2)
    diffs = {r.b: r.diff for r in rows}
    assert diffs[0] == 0
    assert diffs[2] != 0 and diffs[3] != 0
    assert [r.true for r in rows] == brute_os(5, 2, 2)


def test_audit_exact_when_k_small():
    # with k <= 1 the lifting formula is exact
    for p in (7, 11, 13):
        for m in divisors(p - 1):
            for k in (0, 1):
                assert all(r.diff == 0 for r in decomposition_audit(p, m, k))


def test_audit_requires_divisor():
    with pytest.raises(ValueError, match="gcd"):
        decomposition_audit(7, 4, 2)
