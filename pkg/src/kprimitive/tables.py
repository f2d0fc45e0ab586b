"""Numeric bounds for 2-primitive sets whose elements have small largest prime factor.

The weighted sum of t^-lam over such a set is split by the largest prime
p = P(t).  Small p are handled by counting, p from 11 to 37 by integrals
of the counting function N_p(z) against lam z^(-1-lam), and larger p by
the same integrals over [p^nu, 29^nu] plus a tail for N(z).  Counting
functions are bounded via matchings into balanced parts and sums of
floor(x/q) over primes q.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from decimal import ROUND_CEILING, Decimal
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from .analytic import prime_diff_sum
from .arith import balanced_split, default_table, iroot
from .errors import DomainError, InvariantError, PreconditionError
from .precision import PrecisionContext
from .primitivity import IntegerSet, is_k_primitive

__all__ = [
    "Params",
    "small_prime_chain",
    "f_integral",
    "g_integral",
    "sp_prime_bound",
    "sp_doubleprime_bound",
    "SpRow",
    "reproduce_table31",
    "table31_csv",
    "table31_json",
    "BudgetReport",
    "large_prime_budget",
    "middle_integral",
    "tail_integral",
    "SCHEMES",
    "CountingReport",
    "check_counting_bounds",
    "PUBLISHED_TABLE",
    "PUBLISHED_CHAIN",
    "PUBLISHED_MIDDLE",
]

# published values: (S_p, cumulative, prime difference) per p
PUBLISHED_TABLE = {
    11: (0.13259, 0.40792, 0.55427),
    13: (0.11241, 0.52033, 0.62966),
    17: (0.08382, 0.60415, 0.69432),
    19: (0.07601, 0.68016, 0.75484),
    23: (0.06194, 0.74210, 0.80868),
    29: (0.04757, 0.78967, 0.85521),
    31: (0.04501, 0.83468, 0.89978),
    37: (0.03680, 0.87148, 0.93950),
}
PUBLISHED_CHAIN = (0.1093463, 0.1631052, 0.1907220, 0.2753295)
PUBLISHED_MIDDLE = {11: 0.08455, 13: 0.06576, 17: 0.03756, 19: 0.02953, 23: 0.01487}
PUBLISHED_TAIL = 0.45614
PUBLISHED_TOTAL = 0.96374
PUBLISHED_PRIME_SIDE = 0.97661

# thresholds from the floor(x/q) harmonic-sum bounds
HALF_FROM = 185  # sum > x/2 for x >= 185
LOG_BOUND_FROM = 3213  # the log-corrected bound is below x/2 from here on
UPPER_PRIME = 29  # the middle integrals run up to 29^nu


@dataclass(frozen=True)
class Params:
    theta: Fraction = Fraction(3, 10)
    lam: float = 0.7982562
    nu: Fraction = Fraction(10, 3)
    tau: float = 1.140366

    def __post_init__(self):
        if not 0 < self.theta < Fraction(1, 3):
            raise DomainError("theta must lie in (0, 1/3)")
        if self.lam <= 0.5:
            raise DomainError("lambda must exceed 1/2")

    @property
    def window(self) -> Fraction:
        """(1 + theta)/2, the exponent of the largest balanced part."""
        return (1 + self.theta) / 2

    def consistent(self) -> bool:
        """lam = tau (1 - theta) to seven decimals."""
        return round(self.tau * float(1 - self.theta), 7) == round(self.lam, 7)

    def to_dict(self) -> dict:
        return {"theta": str(self.theta), "lam": self.lam, "nu": str(self.nu), "tau": self.tau}


def small_prime_chain(params: Params = Params(), round_up: int | None = None) -> tuple[float, float, float, float]:
    """Cumulative bounds for the primes 2, 3, 5, 7.

    Each such set part has at least ceil(nu) = 4 prime factors, the part
    with P(t) = 2 holds at most one power of 2, and at most 2, 4 and 19
    elements are smooth over {2, 3}, {2, 3, 5} and {2, 3, 5, 7}.

    With ``round_up`` = d every partial bound is rounded up to d decimals
    before the next term is added, which keeps each printed value a valid
    upper bound.
    """
    lam, nu = params.lam, float(params.nu)
    terms = [
        2 ** (-math.ceil(nu) * lam),
        (2 - 1) / 3 ** (nu * lam),
        (4 - 2) / 5 ** (nu * lam),
        (19 - 4) / 7 ** (nu * lam),
    ]
    out = []
    acc = Decimal(0)
    for t in terms:
        acc += Decimal(t)
        if round_up is not None:
            acc = acc.quantize(Decimal(1).scaleb(-round_up), rounding=ROUND_CEILING)
        out.append(float(acc))
    return tuple(out)


def f_integral(y: float, lam: float) -> float:
    """int_y^oo lam z^(-lam-1/2) dz."""
    if lam <= 0.5:
        raise DomainError("f diverges for lambda <= 1/2")
    return lam * y ** (0.5 - lam) / (lam - 0.5)


def _log_factor(lz: float) -> float:
    return 1 - math.log(2) + 2.5 / lz + 10 / lz**2


def g_integral(y: float, lam: float, span: float = 120.0, epsabs: float = 1e-13) -> float:
    """int_y^oo lam z^(-lam-1/2) (1 - log 2 + 2.5/log z + 10/log^2 z) dz.

    Quadrature in u = log z over [log y, log y + span]; beyond, the
    decreasing log factor brackets the tail between (1 - log 2) f(Z) and
    factor(Z) f(Z), and the midpoint is taken.  The default span keeps the
    tail bracket far below 1e-10.
    """
    if y < 3:
        raise DomainError("g needs y >= 3")
    if lam <= 0.5:
        raise DomainError("g diverges for lambda <= 1/2")
    a = math.log(y)
    b = a + span

    def h(u):
        return lam * math.exp((0.5 - lam) * u) * _log_factor(u)

    body, _ = quad(h, a, b, epsabs=epsabs, epsrel=1e-13, limit=500)
    fz = lam * math.exp((0.5 - lam) * b) / (lam - 0.5)
    tail = 0.5 * (1 - math.log(2) + _log_factor(b)) * fz
    return body + tail


def _harmonic_count(m: int, above: int, primes: np.ndarray) -> int:
    """m - sum floor(m/q) over primes above < q <= m."""
    sel = primes[(primes > above) & (primes <= m)]
    return m - int((m // sel).sum())


def sp_prime_bound(p: int, params: Params = Params()) -> float:
    """Bound for the integral of N_p over [p^nu, p^4], split at squares.

    Cells [m^2, (m+1)^2] with floor(p^(nu/2)) < m < p^2 contribute
    (m^-2lam - (m+1)^-2lam)(m - sum_{p<q<=m} floor(m/q)); the partial
    first cell starts at p^nu.
    """
    if p < 11 or p not in default_table(p):
        raise DomainError("p must be a prime >= 11")
    lam, nu = params.lam, params.nu
    # m0 = floor(p^(nu/2)) exactly: largest m with m^(2 den) <= p^(num)
    m0 = iroot(p**nu.numerator, 2 * nu.denominator)
    primes = default_table(p * p).primes_upto(p * p)
    total = math.fsum(
        (m ** (-2 * lam) - (m + 1) ** (-2 * lam)) * _nonneg(_harmonic_count(m, p, primes), p, m)
        for m in range(m0 + 1, p * p)
    )
    first = _nonneg(_harmonic_count(m0, p, primes), p, m0)
    return total + (p ** (-float(nu) * lam) - (m0 + 1) ** (-2 * lam)) * first


def _nonneg(c: int, p: int, m: int) -> int:
    if c < 0:
        raise InvariantError(f"negative cell count {c} at p={p}, m={m}")
    return c


def sp_doubleprime_bound(p: int, params: Params = Params(), as_printed: bool = False) -> float:
    """Bound for the integral of N_p over [p^4, oo).

    N_p(z) <= 0.55 sqrt z below 185^2, <= 0.5 sqrt z up to 3213^2 and the
    log-corrected multiple of sqrt z beyond.  ``as_printed`` adds an extra
    (1 - log 2) f(3213^2), the variant closed form discussed in the README.
    """
    if p < 11:
        raise DomainError("p must be at least 11")
    lam = params.lam
    big = LOG_BOUND_FROM**2
    mid = max(p**4, HALF_FROM**2)
    value = g_integral(big, lam) - 0.5 * f_integral(big, lam) - 0.05 * f_integral(mid, lam) + 0.55 * f_integral(p**4, lam)
    if as_printed:
        value += (1 - math.log(2)) * f_integral(big, lam)
    return value


@dataclass
class SpRow:
    p: int
    sp_prime: float
    sp_doubleprime: float
    sp_bound: float
    cum_bound: float
    prime_diff: float
    published_sp: float
    published_cum: float
    published_diff: float

    @property
    def passed(self) -> bool:
        return self.cum_bound < self.prime_diff

    def deviations(self) -> tuple[float, float, float]:
        return (
            self.sp_bound - self.published_sp,
            self.cum_bound - self.published_cum,
            self.prime_diff - self.published_diff,
        )


def reproduce_table31(params: Params = Params(), as_printed: bool = False, strict: bool = False) -> list[SpRow]:
    """Rows for p = 11 .. 37, cumulated from the small-prime chain.

    With ``strict`` an InvariantError lists every row whose bound exceeds
    the published one by more than 1e-4 or whose cumulative bound is not
    below the prime difference.
    """
    cum = small_prime_chain(params, round_up=7)[-1]
    rows = []
    for p, (psp, pcum, pdiff) in PUBLISHED_TABLE.items():
        a = sp_prime_bound(p, params)
        b = sp_doubleprime_bound(p, params, as_printed)
        cum += a + b
        diff = float(prime_diff_sum(p, repr(params.lam), repr(params.tau), PrecisionContext(dps=20)).value)
        rows.append(SpRow(p, a, b, a + b, cum, diff, psp, pcum, pdiff))
    if strict:
        bad = [r for r in rows if not r.passed or r.sp_bound > r.published_sp + 1e-4]
        if bad:
            lines = [
                f"p={r.p}: S_p' = {r.sp_prime:.7f}, S_p'' = {r.sp_doubleprime:.7f}, "
                f"bound {r.sp_bound:.7f} (published {r.published_sp}), cum {r.cum_bound:.7f} vs diff {r.prime_diff:.7f}"
                for r in bad
            ]
            raise InvariantError("table rows out of tolerance:\n" + "\n".join(lines))
    return rows


_CSV_FIELDS = ["p", "sp_bound", "published_sp", "cum_bound", "published_cum", "prime_diff", "published_diff", "pass"]


def table31_csv(rows: list[SpRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_CSV_FIELDS)
    for r in rows:
        w.writerow([r.p, f"{r.sp_bound:.7f}", r.published_sp, f"{r.cum_bound:.7f}", r.published_cum, f"{r.prime_diff:.7f}", r.published_diff, r.passed])
    return buf.getvalue()


def table31_json(rows: list[SpRow], params: Params = Params()) -> dict:
    return {
        "params": params.to_dict(),
        "context": PrecisionContext(dps=20).to_dict(),
        "rows": [dict(asdict(r), passed=r.passed) for r in rows],
    }


# -- primes from 41 on --------------------------------------------------------

SCHEMES = ("threshold", "exact")


def _cell_integral(lo: float, hi: float, lam: float, count_for, m_start: int) -> float:
    """sum over cells [m^2, (m+1)^2] meeting [lo, hi] of (a^-lam - b^-lam) * count_for(m)."""
    terms = []
    for m in range(m_start, math.isqrt(int(hi)) + 1):
        a = max(lo, m * m)
        b = min(hi, (m + 1) ** 2)
        if b <= a:
            continue
        terms.append((a ** (-lam) - b ** (-lam)) * count_for(m))
    return math.fsum(terms)


def middle_integral(p: int, params: Params = Params(), scheme: str = "threshold") -> float:
    """Bound for int_{p^nu}^{29^nu} lam z^(-1-lam) N_p(z) dz.

    ``threshold``: square cells with q in (p, m] below p^4, then 0.55 sqrt z
    up to 185^2 and 0.5 sqrt z beyond.  ``exact``: square cells throughout,
    restricted to primes q with q^2 > m + 1 so that q > z^(1/4) holds on
    the whole cell.
    """
    if scheme not in SCHEMES:
        raise DomainError(f"scheme must be one of {SCHEMES}")
    lam, nu = params.lam, float(params.nu)
    lo, Z = p**nu, UPPER_PRIME**nu
    m0 = iroot(p**params.nu.numerator, 2 * params.nu.denominator)
    primes = default_table(math.isqrt(int(Z)) + 2).primes_upto(math.isqrt(int(Z)) + 1)
    if scheme == "exact":

        def count(m):
            sel = primes[(primes > p) & (primes * primes > m + 1) & (primes <= m)]
            return m - int((m // sel).sum())

        return _cell_integral(lo, Z, lam, count, m0)
    hi = min(Z, p**4)
    value = _cell_integral(lo, hi, lam, lambda m: _harmonic_count(m, p, primes), m0)
    if Z > p**4:
        mid = min(max(p**4, HALF_FROM**2), Z)
        f = lambda y: f_integral(y, lam)  # noqa: E731
        value += 0.55 * (f(p**4) - f(mid)) + 0.5 * (f(mid) - f(Z))
    return value


def tail_integral(params: Params = Params()) -> float:
    """Bound for int_{29^nu}^oo lam z^(-1-lam) N(z) dz.

    In x = z^w with w = (1 + theta)/2 the weight becomes beta x^(-beta-1),
    beta = lam / w.  N is at most x/2 below x = 3213 and at most
    (1 - log 2 + 1.25/log x + 2.5/log^2 x) x from there on.
    """
    lam = params.lam
    w = float(params.window)
    beta = lam / w
    x0 = UPPER_PRIME ** (float(params.nu) * w)

    def linear(x):  # int_x^oo beta t^(-beta-1) t dt
        return beta / (beta - 1) * x ** (1 - beta)

    def h(u):  # x = e^u
        return beta * math.exp((1 - beta) * u) * (1 - math.log(2) + 1.25 / u + 2.5 / u**2)

    a = math.log(LOG_BOUND_FROM)
    span = 200.0
    body, _ = quad(h, a, a + span, epsabs=1e-13, epsrel=1e-13, limit=500)
    end = math.exp((1 - beta) * (a + span)) * beta / (beta - 1)
    body += 0.5 * ((1 - math.log(2)) + (1 - math.log(2) + 1.25 / (a + span) + 2.5 / (a + span) ** 2)) * end
    return 0.5 * (linear(x0) - linear(LOG_BOUND_FROM)) + body


@dataclass
class BudgetReport:
    scheme: str
    small: float
    middle: dict[int, float]
    tail: float
    prime_side: float
    ceiling: float = PUBLISHED_TOTAL + 2e-3

    @property
    def total(self) -> float:
        return math.fsum([self.small, *self.middle.values(), self.tail])

    @property
    def within_ceiling(self) -> bool:
        return self.total <= self.ceiling

    @property
    def prime_side_ok(self) -> bool:
        return self.prime_side > PUBLISHED_PRIME_SIDE

    @property
    def passed(self) -> bool:
        return self.within_ceiling and self.prime_side_ok and self.total < self.prime_side

    def middle_deviations(self) -> dict[int, float]:
        return {p: v - PUBLISHED_MIDDLE[p] for p, v in self.middle.items()}

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "small": self.small,
            "middle": {str(p): v for p, v in self.middle.items()},
            "tail": self.tail,
            "total": self.total,
            "ceiling": self.ceiling,
            "prime_side": self.prime_side,
            "passed": self.passed,
        }


def large_prime_budget(params: Params = Params(), scheme: str = "threshold") -> BudgetReport:
    small = small_prime_chain(params, round_up=7)[-1]
    middle = {p: middle_integral(p, params, scheme) for p in PUBLISHED_MIDDLE}
    prime_side = float(prime_diff_sum(41, repr(params.lam), repr(params.tau), PrecisionContext(dps=20)).value)
    return BudgetReport(scheme, small, middle, tail_integral(params), prime_side)


# -- counting bounds on concrete sets ---------------------------------------------


@dataclass
class CountingReport:
    z: int
    count: int
    count_bound: Fraction | None  # None when some element has a large prime factor
    count_ok: bool | None
    per_prime: dict[int, tuple[int, int, bool]] = field(default_factory=dict)  # p -> (N_p, bound, ok)
    large_factor: list[int] = field(default_factory=list)  # t with P(t) >= t^theta
    window_failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.count_ok is not False) and all(v[2] for v in self.per_prime.values()) and not self.window_failures


def check_counting_bounds(T: IntegerSet, z: int, params: Params = Params(), check: bool = True) -> CountingReport:
    """Evaluate both counting bounds at z with integer arithmetic.

    With w = (1 + theta)/2 = a/b and x = z^w, the count of t <= z must stay
    below x - sum floor(x/q) over primes q with z^(w/2) <= q < x; since
    floor(x/q) = floor(floor(x)/q), every comparison is a power inequality
    between integers.  For each prime p, N_p(z) is compared with
    sqrt z - sum floor(sqrt z / q) over primes max(p, z^(1/4)) < q < sqrt z.
    The balanced parts of every element must lie strictly between
    t^((1 - theta)/2) and t^((1 + theta)/2).
    """
    if z < 2:
        raise DomainError("z must be at least 2")
    if check and len(T) and not is_k_primitive(T, 2):
        raise PreconditionError("T must be 2-primitive")
    theta = params.theta
    w = params.window
    a, b = w.numerator, w.denominator
    low = (1 - theta) / 2
    members = [t for t in T if t <= z]
    fac = T.factorizations

    large = []
    window = []
    for t in T:
        P = fac[t].support[-1]
        # P < t^theta  <=>  P^den < t^num
        if P**theta.denominator >= t**theta.numerator:
            large.append(t)
        m, M = balanced_split(t)
        if not (m ** low.denominator > t**low.numerator and M**b < t**a):
            window.append(t)

    rep = CountingReport(z, len(members), None, None, large_factor=large, window_failures=window)
    if not large:
        x_floor = iroot(z**a, b)
        zq = z**a
        primes = default_table(x_floor + 1).primes_upto(x_floor).tolist()
        # q >= z^(w/2) <=> q^(2b) >= z^a ; q < x <=> q^b < z^a
        qs = [q for q in primes if q ** (2 * b) >= zq and q**b < zq]
        s = sum(x_floor // q for q in qs)
        rep.count_bound = Fraction(x_floor - s)  # the real bound exceeds this by frac(x)
        rep.count_ok = (len(members) + s) ** b < zq
    root = math.isqrt(z)
    primes = default_table(root + 1).primes_upto(root).tolist()
    by_prime: dict[int, int] = {}
    for t in members:
        P = fac[t].support[-1]
        by_prime[P] = by_prime.get(P, 0) + 1
    for p, n_p in sorted(by_prime.items()):
        # q > z^(1/4) <=> q^4 > z ; q < sqrt z <=> q^2 < z
        s = sum(root // q for q in primes if q > p and q**4 > z and q * q < z)
        rep.per_prime[p] = (n_p, root - s, (n_p + s) ** 2 <= z)
    return rep
