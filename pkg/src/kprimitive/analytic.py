"""Weighted sums over integer sets and prime-sum inequalities checked numerically."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import mpmath
import numpy as np

from .arith import default_table, sieve
from .combinatorics import extension_masks
from .errors import DomainError
from .precision import PrecisionContext, SumResult
from .primitivity import IntegerSet, RationalWeight
from .zeta import mertens_constant

__all__ = [
    "erdos_sum",
    "lambda_sum",
    "F_function",
    "partial_summation_check",
    "prime_diff_sum",
    "qharm_sum",
    "qharm_lower_bound",
    "QharmReport",
    "qharm_verify",
    "RSReport",
    "rs_bounds_check",
    "MajorantReport",
    "verify_prime_majorant",
]

LAMBDA = "0.7982562"
TAU = "1.140366"


def _weight(lam) -> RationalWeight:
    return lam if isinstance(lam, RationalWeight) else RationalWeight.of(lam)


def erdos_sum(A: Iterable[int], ctx: PrecisionContext | None = None) -> SumResult:
    """sum of 1/(n log n) over A."""
    ctx = ctx or PrecisionContext()
    values = list(A)
    with ctx.workdps():
        total = mpmath.fsum(1 / (mpmath.mpf(n) * mpmath.log(n)) for n in values)
    err = float(len(values) * mpmath.mpf(10) ** (-ctx.dps - 8))
    return SumResult("erdos_sum", total, err, True, ctx, {"size": len(values)})


def lambda_sum(A: Iterable[int], lam, x: int, ctx: PrecisionContext | None = None) -> SumResult:
    """sum of n^-lam over n in A with n <= x."""
    ctx = ctx or PrecisionContext()
    w = _weight(lam)
    values = [n for n in A if n <= x]
    with ctx.workdps():
        total = w.power_sum(values)
    exact = isinstance(total, Fraction)
    err = 0.0 if exact else float(len(values) * mpmath.mpf(10) ** (-ctx.dps - 8))
    return SumResult(f"lambda_sum({w})", total, err, True, ctx)


def _prime_support(A: IntegerSet) -> list[int]:
    return sorted(A.support)


def F_function(A: IntegerSet, lam, x: int, ctx: PrecisionContext | None = None) -> SumResult:
    """sum_{p | some n in A, p <= x} p^-lam minus sum_{n in A, n <= x} n^-lam."""
    ctx = ctx or PrecisionContext()
    w = _weight(lam)
    with ctx.workdps():
        primes = [p for p in _prime_support(A) if p <= x]
        value = w.power_sum(primes) - w.power_sum([n for n in A if n <= x])
    exact = isinstance(value, Fraction)
    err = 0.0 if exact else float((len(A) + len(primes)) * mpmath.mpf(10) ** (-ctx.dps - 8))
    return SumResult(f"F({w})", value, err, True, ctx)


def partial_summation_check(A: IntegerSet, x, ctx: PrecisionContext | None = None) -> mpmath.mpf:
    """Residual of the partial-summation identity at weight 1/n.

    F is a step function jumping at elements of A and at their prime
    factors, so F(x)/log x + int_2^x F(u)/(u log^2 u) du is a finite sum of
    -1/log u differences.  The result is its difference from
    sum_{p<=x} 1/(p log p) - sum_{n<=x} 1/(n log n), summed over the prime
    support of A and A itself.
    """
    ctx = ctx or PrecisionContext()
    if x < 2:
        raise DomainError("x must be at least 2")
    primes = [p for p in _prime_support(A) if p <= x]
    elems = [n for n in A if n <= x]
    jumps: dict[int, Fraction] = {}
    for p in primes:
        jumps[p] = jumps.get(p, Fraction(0)) + Fraction(1, p)
    for n in elems:
        jumps[n] = jumps.get(n, Fraction(0)) - Fraction(1, n)
    points = sorted(jumps)
    with ctx.workdps():
        x = mpmath.mpf(x)
        integral = mpmath.mpf(0)
        level = Fraction(0)
        for i, b in enumerate(points):
            level += jumps[b]
            right = mpmath.mpf(points[i + 1]) if i + 1 < len(points) else x
            if level:
                integral += mpmath.mpf(level.numerator) / level.denominator * (1 / mpmath.log(b) - 1 / mpmath.log(right))
        boundary = mpmath.mpf(level.numerator) / level.denominator / mpmath.log(x)
        direct = mpmath.fsum(1 / (p * mpmath.log(p)) for p in primes) - mpmath.fsum(
            1 / (n * mpmath.log(n)) for n in elems
        )
        return boundary + integral - direct


def prime_diff_sum(Y: int, lam=LAMBDA, tau=TAU, ctx: PrecisionContext | None = None) -> SumResult:
    """sum_{p <= Y} (p^-lam - p^-tau)."""
    ctx = ctx or PrecisionContext()
    primes = default_table(max(Y, 2)).primes_upto(Y).tolist()
    with ctx.workdps():
        a, b = mpmath.mpf(lam), mpmath.mpf(tau)
        value = mpmath.fsum(mpmath.mpf(p) ** -a - mpmath.mpf(p) ** -b for p in primes)
    return SumResult(f"prime_diff({Y})", value, float(len(primes) * mpmath.mpf(10) ** (-ctx.dps - 8)), True, ctx)


# -- the floor(x/q) harmonic sums ----------------------------------------------


def qharm_sum(x: int, closed: bool = False) -> int:
    """sum of floor(x/q) over primes q with sqrt(x) < q < x (q <= x if closed)."""
    if x < 2:
        raise DomainError("x must be at least 2")
    primes = default_table(x).primes_upto(x)
    sel = primes[(primes * primes > x) & ((primes <= x) if closed else (primes < x))]
    return int((x // sel).sum())


def qharm_lower_bound(x: float) -> float:
    """(log 2 - 1.25/log x - 2.5/log^2 x) x."""
    lx = math.log(x)
    return (math.log(2) - 1.25 / lx - 2.5 / lx**2) * x


@dataclass
class QharmReport:
    x_max: int
    lower_bound_failures: list[int] = field(default_factory=list)
    half_failures: list[int] = field(default_factory=list)  # x >= 185 with closed sum <= x/2
    tenths_failures: list[int] = field(default_factory=list)  # x >= 67 with closed sum <= 0.45 x
    last_below_half: int | None = None  # largest x with closed sum <= x/2
    last_below_tenths: int | None = None
    bound_reaches_half: int | None = None  # smallest x with lower bound >= x/2
    bound_reaches_tenths: int | None = None

    @property
    def ok(self) -> bool:
        return not (self.lower_bound_failures or self.half_failures or self.tenths_failures)

    def to_dict(self) -> dict:
        return dict(self.__dict__, ok=self.ok)


def qharm_verify(x_max: int = 5000) -> QharmReport:
    """Check the lower bound and the x/2, 0.45 x thresholds for 2 <= x <= x_max."""
    if x_max < 2:
        raise DomainError("x_max must be at least 2")
    rep = QharmReport(x_max)
    primes = sieve(max(x_max, 2)).primes
    for x in range(2, x_max + 1):
        sel = primes[(primes * primes > x) & (primes <= x)]
        closed = int((x // sel).sum())
        open_ = closed - (1 if sel.size and sel[-1] == x else 0)
        bound = qharm_lower_bound(x)
        if open_ < bound:
            rep.lower_bound_failures.append(x)
        if 2 * closed <= x:
            rep.last_below_half = x
            if x >= 185:
                rep.half_failures.append(x)
        if 20 * closed <= 9 * x:
            rep.last_below_tenths = x
            if x >= 67:
                rep.tenths_failures.append(x)
        if rep.bound_reaches_half is None and bound >= x / 2:
            rep.bound_reaches_half = x
        if rep.bound_reaches_tenths is None and bound >= 0.45 * x:
            rep.bound_reaches_tenths = x
    return rep


# -- explicit prime bounds -------------------------------------------------------


@dataclass
class RSReport:
    x_max: int
    mertens: float
    grid: list[int]
    exceptions: dict[str, list[int]]

    def holds_at(self, x: int) -> bool:
        return all(x not in xs for xs in self.exceptions.values())

    def outside_claimed_range(self) -> dict[str, list[int]]:
        """Exceptions not explained by the sqrt x >= 286 restriction."""
        out = dict(self.exceptions)
        out["sqrt_reciprocal_upper"] = [x for x in out["sqrt_reciprocal_upper"] if math.isqrt(x) >= 286]
        return out

    def to_dict(self) -> dict:
        return {"x_max": self.x_max, "mertens": self.mertens, "grid_points": len(self.grid), "exceptions": self.exceptions}


def rs_bounds_check(x_max: int = 10**6, points: int = 200, dense_upto: int = 1000) -> RSReport:
    """Explicit prime-count and reciprocal-sum bounds on a grid.

    Checks, at every integer up to ``dense_upto`` and on a log-spaced grid
    up to ``x_max``:

    * pi(x) < 1.25 x / log x,
    * sum_{q < x} 1/q > log log x + B - 1/(2 log^2 x),
    * sum_{q <= sqrt x} 1/q < log log x - log 2 + B + 2/log^2 x.

    Failing x are collected rather than raised; the last bound is only
    claimed for sqrt x >= 286.
    """
    if x_max < 3:
        raise DomainError("x_max must be at least 3")
    B = float(mertens_constant(PrecisionContext(limit=max(10**6, x_max))).value)
    table = sieve(x_max)
    recip = np.cumsum(1.0 / table.primes.astype(float))
    grid = set(range(3, min(dense_upto, x_max) + 1))
    grid.update(int(v) for v in np.unique(np.round(np.geomspace(3, x_max, points))))
    grid = sorted(grid)
    exceptions: dict[str, list[int]] = {"pi_upper": [], "reciprocal_lower": [], "sqrt_reciprocal_upper": []}

    def rsum(y: float, strict: bool) -> float:
        k = int(np.searchsorted(table.primes, y, side="left" if strict else "right"))
        return float(recip[k - 1]) if k else 0.0

    for x in grid:
        lx = math.log(x)
        llx = math.log(lx)
        if table.pi(x) >= 1.25 * x / lx:
            exceptions["pi_upper"].append(x)
        if rsum(x, strict=True) <= llx + B - 1 / (2 * lx * lx):
            exceptions["reciprocal_lower"].append(x)
        if rsum(math.isqrt(x), strict=False) >= llx - math.log(2) + B + 2 / (lx * lx):
            exceptions["sqrt_reciprocal_upper"].append(x)
    return RSReport(x_max, B, grid, exceptions)


# -- exhaustive check of the prime majorant at weight 1/n -----------------------


@dataclass
class MajorantReport:
    limit: int
    max_size: int
    sets_checked: int
    min_margin: Fraction | None
    argmin: tuple[int, ...]
    failures: list[tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_prime_majorant(limit: int = 60, max_size: int = 6, keep_failures: int = 20) -> MajorantReport:
    """Check F(x) >= 0 at weight 1/n for every nonempty 2-primitive A in [2, limit], |A| <= max_size.

    Sets are generated in increasing-element order.  Beyond the largest
    element of A every prime of A is counted, so F is constant there and
    one comparison per set suffices: for x between consecutive elements F
    is at least the value already checked for the corresponding prefix.
    Comparisons use integers scaled by lcm(2..limit).
    """
    if limit < 2 or max_size < 1:
        raise DomainError("need limit >= 2 and max_size >= 1")
    u = list(range(2, limit + 1))
    pair, triple = extension_masks(u)
    L = math.lcm(*u)
    table = sieve(max(limit, 2))
    primes_of = []
    for n in u:
        ps, m = [], n
        while m > 1:
            p = int(table.spf[m])
            ps.append(p)
            while m % p == 0:
                m //= p
        primes_of.append(ps)
    scaled = [L // n for n in u]

    count = 0
    best_margin: int | None = None
    best_set: tuple[int, ...] = ()
    failures: list[tuple[int, ...]] = []
    # frame: (path, allowed mask, element sum, prime sum, primes used)
    stack = [([], (1 << len(u)) - 1, 0, 0, frozenset())]
    while stack:
        path, allowed, esum, psum, used = stack.pop()
        children = []
        a = allowed
        while a:
            j = (a & -a).bit_length() - 1
            a &= a - 1
            e = esum + scaled[j]
            p = psum
            new_used = used
            for q in primes_of[j]:
                if q not in new_used:
                    p += L // q
                    new_used = new_used | {q}
            margin = p - e
            child = path + [j]
            count += 1
            if best_margin is None or margin < best_margin:
                best_margin, best_set = margin, tuple(u[i] for i in child)
            if margin < 0 and len(failures) < keep_failures:
                failures.append(tuple(u[i] for i in child))
            if len(child) < max_size:
                m = a & ~pair[j]
                for s in path:
                    m &= ~triple[s][j]
                children.append((child, m, e, p, new_used))
        stack.extend(reversed(children))
    min_margin = Fraction(best_margin, L) if best_margin is not None else None
    return MajorantReport(limit, max_size, count, min_margin, best_set, failures)
