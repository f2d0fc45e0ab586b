import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from kprimitive.analytic import (
    F_function,
    erdos_sum,
    lambda_sum,
    partial_summation_check,
    prime_diff_sum,
    qharm_lower_bound,
    qharm_sum,
    qharm_verify,
    rs_bounds_check,
)
from kprimitive.arith import sieve
from kprimitive.corpus import corpus
from kprimitive.errors import DomainError
from kprimitive.primitivity import IntegerSet


def test_erdos_sum_examples():
    assert abs(float(erdos_sum(IntegerSet([2])).value) - 1 / (2 * math.log(2))) < 1e-15
    assert float(erdos_sum(IntegerSet([])).value) == 0


def test_lambda_sum_exact_for_integer_weight():
    A = IntegerSet([2, 4])
    assert lambda_sum(A, 1, 3).value == Fraction(1, 2)
    assert lambda_sum(A, 1, 10).value == Fraction(3, 4)


def test_lambda_sum_against_high_precision_direct_sum():
    primes = sieve(100).prime_list()
    got = lambda_sum(IntegerSet(primes), "0.7982562", 100).value
    with mpmath.workdps(60):
        lam = mpmath.mpf("0.7982562")
        want = mpmath.fsum(mpmath.mpf(p) ** -lam for p in primes)
        assert abs(mpmath.mpf(got) - want) < mpmath.mpf(10) ** -25


def test_F_function_examples():
    primes = IntegerSet(sieve(50).prime_list())
    assert all(F_function(primes, 1, x).value == 0 for x in range(2, 60))
    assert F_function(IntegerSet([4]), 1, 4).value == Fraction(1, 4)


def test_partial_summation_examples():
    assert partial_summation_check(IntegerSet([2, 3, 5, 7]), 20) == 0
    assert abs(partial_summation_check(IntegerSet([4]), 10)) < 1e-12
    with pytest.raises(DomainError):
        partial_summation_check(IntegerSet([4]), 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_partial_summation_on_generated_sets(seed):
    A = corpus(seed=seed, count=1, kind="smooth")[0]
    x = random.Random(seed).randint(2, 2000)
    assert abs(partial_summation_check(A, x)) < 1e-10


def test_prime_diff_sum():
    lam, tau = 0.7982562, 1.140366
    assert abs(float(prime_diff_sum(2).value) - (2**-lam - 2**-tau)) < 1e-15
    assert float(prime_diff_sum(7).value) >= 0.471733
    assert float(prime_diff_sum(41).value) > 0.97661


def test_qharm_sum_examples():
    assert qharm_sum(100) == sum(100 // q for q in sieve(100).prime_list() if 10 < q < 100) == 54
    assert qharm_sum(4) == 1
    assert qharm_sum(2) == 0
    assert qharm_lower_bound(2) < 0


def test_qharm_thresholds():
    rep = qharm_verify(400)
    assert rep.ok
    # the x/2 threshold is sharp: 184 is the last failure
    assert 2 * qharm_sum(184, closed=True) <= 184
    assert 2 * qharm_sum(185, closed=True) > 185
    assert 20 * qharm_sum(67, closed=True) > 9 * 67


def test_rs_bounds():
    rep = rs_bounds_check(10**5, points=80)
    assert rep.exceptions["reciprocal_lower"] == []
    assert rep.exceptions["pi_upper"] == [113]
    assert rep.outside_claimed_range()["sqrt_reciprocal_upper"] == []
    assert rep.holds_at(10**5)
    assert sieve(10**6).pi(10**6) == 78498 < 1.25 * 10**6 / math.log(10**6)
