"""Riemann and prime zeta values and the constants built from them.

Zeta values come from Euler-Maclaurin summation with the usual remainder
bound for real arguments.  Prime zeta values use the Moebius inversion
P(s) = sum_n mu(n)/n log zeta(ns), applied to the zeta function with the
Euler factors of small primes removed so that only a few terms matter.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath
import numpy as np

from .arith import sieve
from .errors import DomainError, InvariantError
from .precision import PrecisionContext, SumResult

__all__ = [
    "riemann_zeta",
    "prime_zeta",
    "erdos_constant",
    "tau1_root",
    "tau1_function",
    "mertens_constant",
    "exp_euler_gamma",
]

_EPS = 2.0**-52
# Euler factors of primes up to this bound are removed before the Moebius series
_SPLIT = 100


@lru_cache(maxsize=None)
def _bernoulli_ratio(k: int, dps: int):
    with mpmath.workdps(dps):
        return mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k)


def _zeta_em(s, dps: int):
    """(value, remainder bound) for real s > 1 at ``dps`` digits."""
    with mpmath.workdps(dps + 10):
        s = mpmath.mpf(s)
        eps = mpmath.mpf(10) ** (-dps - 5)
        N = max(10, dps)
        head = mpmath.fsum(mpmath.mpf(n) ** -s for n in range(1, N))
        Nn = mpmath.mpf(N)
        total = head + Nn ** (1 - s) / (s - 1) + Nn**-s / 2
        rising = s  # s (s+1) ... (s+2k-2)
        k = 1
        while True:
            term = _bernoulli_ratio(k, dps + 10) * rising * Nn ** (-s - 2 * k + 1)
            if abs(term) < eps * total or k > 4 * N:
                # for real s the remainder is at most the first omitted term
                return +total, abs(term)
            total += term
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            k += 1


def riemann_zeta(s, ctx: PrecisionContext | None = None) -> SumResult:
    ctx = ctx or PrecisionContext()
    if mpmath.mpf(s) <= 1:
        raise DomainError("zeta is evaluated only for real s > 1")
    value, bound = _zeta_em(s, ctx.dps)
    rounding = mpmath.mpf(10) ** (-ctx.dps - 8) * abs(value)
    return SumResult(f"zeta({mpmath.nstr(mpmath.mpf(s), 12)})", value, float(bound + rounding), True, ctx)


class _PrimeFactors:
    """Primes up to a bound with float logs for fast Euler-factor sums."""

    def __init__(self, bound: int):
        self.bound = bound
        self.primes = sieve(max(bound, 2)).primes_upto(bound) if bound >= 2 else np.array([], dtype=np.int64)
        self.logs = np.log(self.primes.astype(float))
        self.next_prime = _next_prime(bound)

    def log_euler(self, sigma: float) -> tuple[float, float]:
        """sum_{p<=bound} log(1 - p^-sigma) in floating point with an error bound."""
        if not len(self.primes):
            return 0.0, 0.0
        terms = np.log1p(-np.exp(-sigma * self.logs))
        return math.fsum(terms), 8 * _EPS * float(np.abs(terms).sum())

    def power_sum(self, sigma: float) -> tuple[float, float]:
        terms = np.exp(-sigma * self.logs)
        return math.fsum(terms), 4 * _EPS * float(terms.sum())


def _next_prime(x: int) -> int:
    n = max(2, x + 1)
    while any(n % d == 0 for d in range(2, math.isqrt(n) + 1)):
        n += 1
    return n


@lru_cache(maxsize=8)
def _factors(bound: int) -> _PrimeFactors:
    return _PrimeFactors(bound)


def _mobius(n: int) -> int:
    out, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            out = -out
        d += 1
    return -out if m > 1 else out


def _restricted_log_zeta_bound(sigma, q: int):
    """|log zeta_{>X}(sigma)| <= 2 sum_{m>=q} m^-sigma for q the first prime above X."""
    return 2 * (mpmath.mpf(q) ** -sigma + mpmath.mpf(q) ** (1 - sigma) / (sigma - 1))


def _tail_prime_zeta(s, exclude: int, dps: int, exact: bool):
    """P_{>X}(s) = sum over primes p > X of p^-s, with an error bound.

    ``exact`` evaluates the removed Euler factors in multiprecision;
    otherwise they are summed in double precision (used for large X).
    """
    fac = _factors(exclude)
    q = fac.next_prime
    with mpmath.workdps(dps + 10):
        s = mpmath.mpf(s)
        eps = mpmath.mpf(10) ** (-dps - 5)
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        n = 1
        while True:
            sigma = n * s
            # all remaining terms n' >= n together
            rest = 2 * (1 + q / (n * s - 1)) * mpmath.mpf(q) ** (-sigma) / (1 - mpmath.mpf(q) ** (-s))
            if n > 1 and rest < eps:
                err += rest
                break
            mu = _mobius(n)
            if mu:
                z, zerr = _zeta_em(sigma, dps)
                lz = mpmath.log(z)
                lerr = zerr / (z - zerr)
                if exact:
                    lz += mpmath.fsum(mpmath.log(1 - mpmath.mpf(int(p)) ** -sigma) for p in fac.primes)
                else:
                    fsum, ferr = fac.log_euler(float(sigma))
                    lz += fsum
                    lerr += ferr
                total += mu * lz / n
                err += lerr / n
            n += 1
        return +total, err


def prime_zeta(s, ctx: PrecisionContext | None = None, exclude_upto: int = 0) -> SumResult:
    """Sum of p^-s over primes p > exclude_upto (all primes by default)."""
    ctx = ctx or PrecisionContext()
    if mpmath.mpf(s) <= 1:
        raise DomainError("prime zeta is evaluated only for real s > 1")
    with mpmath.workdps(ctx.dps + 10):
        s = mpmath.mpf(s)
        if exclude_upto <= _SPLIT:
            tail, err = _tail_prime_zeta(s, _SPLIT, ctx.dps, exact=True)
            head = mpmath.fsum(
                mpmath.mpf(int(p)) ** -s for p in _factors(_SPLIT).primes if p > exclude_upto
            )
            value = head + tail
        else:
            exact = exclude_upto <= 10**4
            value, err = _tail_prime_zeta(s, exclude_upto, ctx.dps, exact=exact)
        err += mpmath.mpf(10) ** (-ctx.dps - 8)
        name = f"P({mpmath.nstr(s, 12)})" if exclude_upto == 0 else f"P_>{exclude_upto}({mpmath.nstr(s, 12)})"
        return SumResult(name, +value, float(err), True, ctx, {"exclude_upto": exclude_upto})


def erdos_constant(ctx: PrecisionContext | None = None) -> SumResult:
    """sum over primes of 1/(p log p).

    Primes up to ``ctx.limit`` are summed directly.  The remaining tail is
    either the integral of P_{>X}(s) over s in [1, oo) (zeta-accelerated)
    or the estimate 1/log X, whose stated error 1/(4 pi sqrt X) assumes
    the Riemann hypothesis.
    """
    ctx = ctx or PrecisionContext()
    X = ctx.limit
    fac = _factors(X)
    terms = 1.0 / (fac.primes.astype(float) * fac.logs)
    direct = math.fsum(terms)
    direct_err = 4 * _EPS * direct
    details = {"direct_sum": direct, "primes_summed": int(len(fac.primes))}
    if ctx.tail_mode == "pnt-estimate":
        tail = 1 / math.log(X)
        tail_err = 1 / (4 * math.pi * math.sqrt(X))
        details.update(tail=tail, tail_method="1/log X, error assumes RH")
        return SumResult("C", mpmath.mpf(direct) + tail, direct_err + tail_err, False, ctx, details)

    q = fac.next_prime
    upper = 8

    floor = mpmath.mpf(10) ** -15

    def integrand(s):
        # quadrature nodes can round onto the pole at s = 1; the clipped
        # sliver contributes below 1e-13
        return _tail_prime_zeta(max(s, 1 + floor), X, 12, exact=False)[0]

    with mpmath.workdps(20):
        tail, quad_err = mpmath.quad(integrand, [1, 1 + mpmath.mpf(10) ** -3, 1.05, 1.5, 3, upper], error=True)
        # integrand error: evaluation error at the sample points, bounded at s = 1 + 1e-3
        _, eval_err = _tail_prime_zeta(mpmath.mpf("1.001"), X, 12, exact=False)
        beyond = mpmath.quad(lambda s: _restricted_log_zeta_bound(s, q), [upper, mpmath.inf])
    err = direct_err + float(quad_err) + float(eval_err) * (upper - 1) + float(beyond)
    details.update(tail=float(tail), tail_method="integral of restricted prime zeta", quadrature_error=float(quad_err))
    # the quadrature error is an estimate, so the result is not flagged rigorous
    return SumResult("C", mpmath.mpf(direct) + tail, err, False, ctx, details)


def tau1_function(t, ctx: PrecisionContext | None = None) -> tuple[mpmath.mpf, float]:
    """h(t) = P(t) - 1 - sqrt(1 - P(2t)) with an error bound."""
    ctx = ctx or PrecisionContext()
    with mpmath.workdps(ctx.dps + 10):
        p1 = prime_zeta(t, ctx)
        p2 = prime_zeta(2 * mpmath.mpf(t), ctx)
        root = mpmath.sqrt(1 - p2.value)
        value = p1.value - 1 - root
        # d sqrt(1 - u) / du = -1 / (2 sqrt(1 - u))
        err = p1.error_bound + p2.error_bound / (2 * float(root) - 2 * p2.error_bound)
        return +value, err


def tau1_root(ctx: PrecisionContext | None = None, bracket=(1.05, 1.25)) -> SumResult:
    """Root of h on the bracket: bisection to width 1e-8, then secant steps."""
    ctx = ctx or PrecisionContext()
    with mpmath.workdps(ctx.dps + 10):
        lo, hi = mpmath.mpf(bracket[0]), mpmath.mpf(bracket[1])
        hlo, elo = tau1_function(lo, ctx)
        hhi, ehi = tau1_function(hi, ctx)
        if not (hlo - elo > 0 > hhi + ehi or hlo + elo < 0 < hhi - ehi):
            raise InvariantError(f"h does not change sign on [{bracket[0]}, {bracket[1]}]")
        rising = hlo < 0
        signs_certain = True
        while hi - lo > mpmath.mpf("1e-8"):
            mid = (lo + hi) / 2
            hm, em = tau1_function(mid, ctx)
            if abs(hm) <= em:
                signs_certain = False
                lo = hi = mid
                break
            if (hm < 0) == rising:
                lo, hlo = mid, hm
            else:
                hi, hhi = mid, hm
        a, b = lo, hi
        ha, hb = hlo, hhi
        x = (a + b) / 2
        if b > a:
            for _ in range(6):
                if hb == ha:
                    break
                x_new = b - hb * (b - a) / (hb - ha)
                a, ha = b, hb
                b = x_new
                hb, _ = tau1_function(b, ctx)
                if abs(b - a) < mpmath.mpf(10) ** (-ctx.dps + 5):
                    break
            x = b
        inside = lo <= x <= hi
        bound = float(hi - lo) if inside and hi > lo else 1e-8
        return SumResult(
            "tau1",
            +x,
            bound,
            signs_certain and inside,
            ctx,
            {"bracket": [mpmath.nstr(lo, 15), mpmath.nstr(hi, 15)]},
        )


def exp_euler_gamma(ctx: PrecisionContext | None = None) -> SumResult:
    """e^gamma = 1.781072..., the reference ceiling for partial Erdos sums."""
    ctx = ctx or PrecisionContext()
    with mpmath.workdps(ctx.dps + 10):
        return SumResult("egamma", mpmath.exp(mpmath.euler), float(mpmath.mpf(10) ** (-ctx.dps - 5)), True, ctx)


def mertens_constant(ctx: PrecisionContext | None = None) -> SumResult:
    """B = gamma + sum_p (log(1 - 1/p) + 1/p).

    The tail over p > X lies in [-1/X, 0] since each term is between
    -1/(p(p-1)) and 0; the midpoint is returned.
    """
    ctx = ctx or PrecisionContext()
    X = ctx.limit
    fac = _factors(X)
    inv = np.exp(-fac.logs)
    terms = np.log1p(-inv) + inv
    s = math.fsum(terms)
    err = 8 * _EPS * float(inv.sum()) + 0.5 / X
    with mpmath.workdps(ctx.dps + 10):
        value = mpmath.euler + s - mpmath.mpf(1) / (2 * X)
    return SumResult("B", +value, err, True, ctx, {"primes_summed": int(len(fac.primes))})
