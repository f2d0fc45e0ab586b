"""Integer arithmetic substrate: sieving, factorization, balanced splits.

Everything here is a pure function of its arguments.  A :class:`PrimeTable`
is immutable once built and can be shared freely.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "PrimeTable",
    "ExponentVector",
    "sieve",
    "default_table",
    "factorize",
    "greatest_prime_factor",
    "omega",
    "balanced_split",
    "smooth_numbers",
    "first_primes",
    "is_prime",
    "iroot",
]

_INT64_MAX = 2**63 - 1


def iroot(n: int, k: int) -> int:
    """Largest integer r with r**k <= n (n >= 0)."""
    if n < 0:
        raise DomainError("iroot of a negative number")
    if n < 2 or k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit`` plus a smallest-prime-factor lookup."""

    limit: int
    primes: np.ndarray
    spf: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, n: object) -> bool:
        return isinstance(n, (int, np.integer)) and 2 <= n <= self.limit and int(self.spf[n]) == n

    def prime_list(self) -> list[int]:
        return self.primes.tolist()

    def primes_upto(self, x: int) -> np.ndarray:
        """Primes p <= x (x may exceed nothing beyond ``limit``)."""
        if x > self.limit:
            raise DomainError(f"table limit {self.limit} below requested bound {x}")
        return self.primes[: int(np.searchsorted(self.primes, x, side="right"))]

    def pi(self, x: int) -> int:
        """Prime counting function for x <= limit."""
        if x > self.limit:
            raise DomainError(f"table limit {self.limit} below requested bound {x}")
        return int(np.searchsorted(self.primes, x, side="right"))


def sieve(limit: int) -> PrimeTable:
    """Build a :class:`PrimeTable` for [2, limit]."""
    limit = int(limit)
    if limit < 2:
        raise DomainError("sieve limit must be at least 2")
    if limit > _INT64_MAX:
        raise DomainError("sieve limit exceeds the 64-bit range")
    dtype = np.int32 if limit < 2**31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    idx = np.flatnonzero(spf[2:] == 0) + 2
    spf[idx] = idx
    spf.setflags(write=False)
    primes = idx.astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes, spf=spf)


@lru_cache(maxsize=8)
def _cached_table(limit: int) -> PrimeTable:
    return sieve(limit)


def default_table(limit: int) -> PrimeTable:
    """Shared table covering at least ``limit``, rounded up to a power of two."""
    size = max(1 << 16, 1 << max(0, int(limit) - 1).bit_length())
    return _cached_table(size)


def first_primes(r: int) -> list[int]:
    """The first ``r`` primes."""
    if r <= 0:
        return []
    bound = 16
    while True:
        table = default_table(bound)
        if len(table) >= r:
            return table.primes[:r].tolist()
        bound *= 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 1 << 20:
        return n in default_table(n)
    for p in default_table(math.isqrt(n) + 1).primes_upto(math.isqrt(n)):
        if n % int(p) == 0:
            return False
    return True


@dataclass(frozen=True, order=False)
class ExponentVector:
    """An integer > 1 written as exponents over an increasing prime support."""

    support: tuple[int, ...]
    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.support) != len(self.exps):
            raise DomainError("support and exponents differ in length")
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise DomainError("support must be strictly increasing")
        if any(e < 0 for e in self.exps) or not any(self.exps):
            raise DomainError("exponents must be non-negative and not all zero")

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "ExponentVector":
        items = sorted((p, e) for p, e in d.items() if e)
        return cls(tuple(p for p, _ in items), tuple(e for _, e in items))

    def as_dict(self) -> dict[int, int]:
        return {p: e for p, e in zip(self.support, self.exps) if e}

    @property
    def value(self) -> int:
        out = 1
        for p, e in zip(self.support, self.exps):
            out *= p**e
        return out

    def on(self, support: Sequence[int]) -> tuple[int, ...]:
        """Exponents re-expressed over another support (missing primes read as 0)."""
        d = self.as_dict()
        return tuple(d.get(p, 0) for p in support)

    def __le__(self, other: "ExponentVector") -> bool:
        """Componentwise order, i.e. divisibility of the represented integers."""
        od = other.as_dict()
        return all(od.get(p, 0) >= e for p, e in self.as_dict().items())

    def __str__(self) -> str:
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.as_dict().items())


def _trial_factor(n: int, table: PrimeTable) -> dict[int, int]:
    out: dict[int, int] = {}
    root = math.isqrt(n)
    for p in table.primes:
        p = int(p)
        if p > root:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            root = math.isqrt(n)
    if n > 1:
        if table.limit < math.isqrt(n):
            raise DomainError(f"cofactor {n} cannot be certified prime with table limit {table.limit}")
        out[n] = out.get(n, 0) + 1
    return out


def _factor_large(n: int) -> ExponentVector:
    """Strip primes below 2^22 first; sieve further only for a cofactor that needs it."""
    small = default_table(1 << 22)
    out: dict[int, int] = {}
    for p in small.primes:
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if math.isqrt(n) <= small.limit:
            # every prime up to min(sqrt n, 2^22) has been tried
            out[n] = out.get(n, 0) + 1
        else:
            for p, e in _trial_factor(n, default_table(math.isqrt(n) + 1)).items():
                out[p] = out.get(p, 0) + e
    return ExponentVector.from_dict(out)


def factorize(n: int, table: PrimeTable | None = None) -> ExponentVector:
    """Prime factorization of ``n`` > 1.

    Uses the smallest-prime-factor table when ``n`` is within its range and
    trial division by the table's primes otherwise.
    """
    n = int(n)
    if n <= 1:
        raise DomainError(f"cannot factor {n}: integers must exceed 1")
    if table is None:
        if n > 1 << 22:
            return _factor_large(n)
        table = default_table(n)
    if n <= table.limit:
        spf = table.spf
        out: dict[int, int] = {}
        while n > 1:
            p = int(spf[n])
            out[p] = out.get(p, 0) + 1
            n //= p
    else:
        out = _trial_factor(n, table)
    return ExponentVector.from_dict(out)


def greatest_prime_factor(n: int, table: PrimeTable | None = None) -> int:
    return factorize(n, table).support[-1]


def omega(n: int, table: PrimeTable | None = None) -> int:
    """Number of prime factors of n counted with multiplicity."""
    return sum(factorize(n, table).exps)


def divisors(n: int, table: PrimeTable | None = None) -> list[int]:
    """All positive divisors of n >= 1, increasing."""
    if n == 1:
        return [1]
    fv = factorize(n, table)
    divs = [1]
    for p, e in zip(fv.support, fv.exps):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def balanced_split(t: int, table: PrimeTable | None = None) -> tuple[int, int]:
    """Factor t = m * M with m <= M and M/m minimal.

    m is the largest divisor of t not exceeding sqrt(t), which makes the
    pair unique.
    """
    if t <= 1:
        raise DomainError(f"balanced_split needs t > 1, got {t}")
    r = math.isqrt(t)
    m = max(d for d in divisors(t, table) if d <= r)
    return m, t // m


def smooth_numbers(support: Sequence[int], caps: Sequence[int] | int) -> list[int]:
    """All products prod q_i^e_i with 0 <= e_i <= cap_i, excluding 1, sorted."""
    if not support:
        raise DomainError("smooth_numbers needs a non-empty prime support")
    if isinstance(caps, int):
        caps = [caps] * len(support)
    if len(caps) != len(support):
        raise DomainError("one exponent cap per support prime is required")
    values = []
    for exps in itertools.product(*(range(c + 1) for c in caps)):
        v = 1
        for q, e in zip(support, exps):
            v *= q**e
        if v > 1:
            values.append(v)
    return sorted(values)


def omega_table(limit: int) -> np.ndarray:
    """Array whose n-th entry is Omega(n) for n <= limit (entries 0, 1 are 0)."""
    out = np.zeros(limit + 1, dtype=np.int8)
    for p in sieve(max(limit, 2)).primes:
        p = int(p)
        pk = p
        while pk <= limit:
            out[pk::pk] += 1
            pk *= p
    return out
