import math

import mpmath
import numpy as np
import pytest

from kprimitive.arith import sieve
from kprimitive.errors import DomainError
from kprimitive.precision import PrecisionContext
from kprimitive.zeta import (
    erdos_constant,
    exp_euler_gamma,
    mertens_constant,
    prime_zeta,
    riemann_zeta,
    tau1_function,
    tau1_root,
)

CTX = PrecisionContext(dps=30)


@pytest.fixture(scope="module")
def primes_1e7():
    return sieve(10**7).primes.astype(float)


def test_riemann_zeta_closed_forms():
    with mpmath.workdps(40):
        assert riemann_zeta(2, CTX).encloses(mpmath.pi**2 / 6)
        assert riemann_zeta(4, CTX).encloses(mpmath.pi**4 / 90)


def test_riemann_zeta_against_direct_sum():
    s = 2.28
    n = np.arange(1, 10**7 + 1, dtype=float)
    X = 10**7
    direct = float(np.sum(n ** (-s)))
    # integral tail plus the half-term correction
    tail = X ** (1 - s) / (s - 1) - 0.5 * X ** (-s)
    assert abs(float(riemann_zeta(s, CTX).value) - (direct + tail)) < 1e-12


@pytest.mark.parametrize("s", [1.5, 2, 3])
def test_prime_zeta_bracketed_by_direct_sum(s, primes_1e7):
    direct = math.fsum(primes_1e7 ** (-s))
    X = 10**7
    # the tail over primes beyond X is positive and below the integer tail
    tail_upper = X ** (1 - s) / (s - 1)
    value = float(prime_zeta(s, CTX).value)
    assert direct < value < direct + tail_upper


def test_prime_zeta_slow_case_against_log_integral_tail(primes_1e7):
    s = 1.2
    direct = math.fsum(primes_1e7 ** (-s))
    # tail over primes beyond X approximated by int_X^oo t^-s / log t dt = E1((s-1) log X)
    tail = float(mpmath.e1((s - 1) * math.log(10**7)))
    assert abs(float(prime_zeta(s, CTX).value) - (direct + tail)) < 2e-3


def test_prime_zeta_leading_terms():
    assert abs(float(prime_zeta(2, CTX).value) - 0.4522474200410654985) < 1e-15
    p10 = float(prime_zeta(10, CTX).value)
    assert 2**-10 < p10 < 2**-10 + 2 * 3**-10


def test_prime_zeta_domain():
    with pytest.raises(DomainError):
        prime_zeta(1, CTX)


def test_erdos_constant_modes_agree(primes_1e7):
    fast = erdos_constant(PrecisionContext(dps=30, limit=10**5, tail_mode="pnt-estimate"))
    acc = erdos_constant(PrecisionContext(dps=30, limit=10**5))
    assert abs(float(fast.value) - float(acc.value)) <= fast.error_bound + acc.error_bound
    head = primes_1e7[primes_1e7 <= 10**6]
    assert math.fsum(1 / (head * np.log(head))) < float(acc.value)
    assert abs(float(acc.value) - 1.636616) < 5e-5


def test_tau1_sign_change_and_stability():
    assert tau1_function(1.05, CTX)[0] > 0 > tau1_function(1.25, CTX)[0]
    a = tau1_root(PrecisionContext(dps=30))
    b = tau1_root(PrecisionContext(dps=60))
    assert abs(float(a.value) - float(b.value)) < 1e-12
    assert abs(float(a.value) - 1.1403659) < 1e-5


def test_exp_euler_gamma_and_mertens():
    assert abs(float(exp_euler_gamma(CTX).value) - 1.781072418) < 1e-9
    B = mertens_constant(CTX)
    assert abs(float(B.value) - 0.2614972128) < 1e-6 + B.error_bound


def test_precision_context_validation():
    with pytest.raises(DomainError):
        PrecisionContext(dps=5)
    with pytest.raises(DomainError):
        PrecisionContext(tail_mode="guess")
