import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kprimitive.arith import (
    balanced_split,
    divisors,
    factorize,
    first_primes,
    greatest_prime_factor,
    iroot,
    is_prime,
    omega,
    sieve,
    smooth_numbers,
)
from kprimitive.errors import DomainError


def trial_division_primes(limit: int) -> list[int]:
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, math.isqrt(n) + 1))]


def test_sieve_small():
    assert sieve(10).prime_list() == [2, 3, 5, 7]
    assert sieve(2).prime_list() == [2]
    with pytest.raises(DomainError):
        sieve(1)


def test_sieve_matches_trial_division():
    assert sieve(5000).prime_list() == trial_division_primes(5000)


def test_sieve_count_against_numpy_oracle():
    limit = 10**6
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    assert len(sieve(limit)) == int(flags.sum()) == 78498


def test_pi_counts():
    table = sieve(1000)
    assert table.pi(10) == 4 and table.pi(1000) == 168 and table.pi(1) == 0


def test_factorize_examples():
    assert factorize(150).as_dict() == {2: 1, 3: 1, 5: 2}
    assert factorize(7).as_dict() == {7: 1}
    assert factorize(2**4 * 11**3).as_dict() == {2: 4, 11: 3}
    with pytest.raises(DomainError):
        factorize(1)


def test_factorize_beyond_table():
    n = 1_000_003 * 999_983
    assert factorize(n).as_dict() == {999_983: 1, 1_000_003: 1}
    assert factorize(2**5 * 1_000_003, sieve(2000)).as_dict() == {2: 5, 1_000_003: 1}
    # a small explicit table cannot certify a large cofactor
    with pytest.raises(DomainError):
        factorize(n, sieve(100))


@given(st.integers(min_value=2, max_value=10**9))
def test_factorize_roundtrip(n):
    fv = factorize(n)
    assert fv.value == n
    assert list(fv.support) == sorted(fv.support)
    assert all(is_prime(p) for p in fv.support)


def test_greatest_prime_factor_and_omega():
    assert greatest_prime_factor(150) == 5
    assert greatest_prime_factor(2**10) == 2
    assert greatest_prime_factor(97 * 89) == 97
    assert omega(12) == 3 and omega(7) == 1 and omega(32) == 5


def test_balanced_split_examples():
    assert balanced_split(12) == (3, 4)
    assert balanced_split(36) == (6, 6)
    assert balanced_split(13) == (1, 13)
    with pytest.raises(DomainError):
        balanced_split(1)


@given(st.integers(min_value=2, max_value=10**6))
def test_balanced_split_is_largest_divisor_below_root(t):
    m, M = balanced_split(t)
    assert m * M == t and m <= M
    assert m == max(d for d in divisors(t) if d * d <= t)


def test_smooth_numbers():
    assert smooth_numbers([2, 3], [1, 1]) == [2, 3, 6]
    assert smooth_numbers([2], 3) == [2, 4, 8]
    vals = smooth_numbers([2, 3, 5], 2)
    assert len(vals) == 26 and vals == sorted(set(vals))
    with pytest.raises(DomainError):
        smooth_numbers([], 2)


def test_iroot_and_first_primes():
    assert iroot(10**6, 3) == 100 and iroot(10**4, 3) == 21 and iroot(2**64, 2) == 2**32
    assert first_primes(5) == [2, 3, 5, 7, 11]


def test_big_integers_are_exact():
    n = 2**200 * 3
    assert factorize(n).as_dict() == {2: 200, 3: 1}
