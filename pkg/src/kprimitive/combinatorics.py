"""Constructive combinatorics around dense 2-primitive sets.

Monotone subsequences, Steiner triple systems, the prime-triple
construction of a dense 2-primitive set, the Omega-level primitive set and
an exhaustive enumerator of small 2-primitive subsets of an interval.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import mpmath
import numpy as np

from .arith import iroot, omega_table, sieve
from .errors import DomainError, PreconditionError
from .primitivity import IntegerSet

__all__ = [
    "erdos_szekeres",
    "TripleSystem",
    "steiner_triple_system",
    "admissible_steiner_order",
    "erdos38_set",
    "omega_level",
    "omega_level_set",
    "extension_masks",
    "iter_two_primitive_subsets",
]


def erdos_szekeres(seq: Sequence[float], r: int, s: int) -> tuple[str, list[int]]:
    """Monotone subsequence guaranteed for sequences of length (r-1)(s-1)+1.

    Returns ("nondecreasing", idx) with len(idx) >= r or ("nonincreasing",
    idx) with len(idx) >= s.  Each position i gets the pair (b_i, c_i) of
    longest nondecreasing / nonincreasing runs ending there; the first
    position where b_i >= r or c_i >= s is backtracked.
    """
    if r < 1 or s < 1:
        raise DomainError("r and s must be positive")
    n = len(seq)
    if n < (r - 1) * (s - 1) + 1:
        raise PreconditionError(f"need at least {(r - 1) * (s - 1) + 1} terms, got {n}")
    up = [1] * n
    down = [1] * n
    up_prev = [-1] * n
    down_prev = [-1] * n
    for i in range(n):
        for j in range(i):
            if seq[j] <= seq[i] and up[j] + 1 > up[i]:
                up[i], up_prev[i] = up[j] + 1, j
            if seq[j] >= seq[i] and down[j] + 1 > down[i]:
                down[i], down_prev[i] = down[j] + 1, j
        if up[i] >= r:
            return "nondecreasing", _backtrack(up_prev, i)[-r:] if r > 0 else []
        if down[i] >= s:
            return "nonincreasing", _backtrack(down_prev, i)[-s:]
    # unreachable when the length condition holds: all (b_i, c_i) are distinct
    raise AssertionError("pigeonhole argument failed")


def _backtrack(prev: list[int], i: int) -> list[int]:
    out = []
    while i != -1:
        out.append(i)
        i = prev[i]
    return out[::-1]


@dataclass(frozen=True)
class TripleSystem:
    v: int
    triples: tuple[tuple[int, int, int], ...]

    def pair_coverage(self) -> dict[tuple[int, int], int]:
        cover = {pair: 0 for pair in itertools.combinations(range(self.v), 2)}
        for t in self.triples:
            for pair in itertools.combinations(sorted(t), 2):
                cover[pair] += 1
        return cover

    def is_steiner(self) -> bool:
        return (
            all(len(set(t)) == 3 and all(0 <= x < self.v for x in t) for t in self.triples)
            and len(self.triples) == self.v * (self.v - 1) // 6
            and all(c == 1 for c in self.pair_coverage().values())
        )


_FANO = tuple(tuple(sorted(((0 + i) % 7, (1 + i) % 7, (3 + i) % 7))) for i in range(7))


def steiner_triple_system(v: int) -> TripleSystem:
    """Steiner triple system on v points, v = 7 or v = 3 (mod 6).

    v = 6n + 3 uses the Bose construction over the idempotent commutative
    quasigroup x o y = (n + 1)(x + y) mod (2n + 1); v = 7 is the Fano plane.
    """
    if v == 7:
        sts = TripleSystem(7, tuple(sorted(_FANO)))
    elif v >= 3 and v % 6 == 3:
        m = v // 3  # 2n + 1
        half = (m + 1) // 2  # n + 1, the inverse of 2 mod m

        def pt(x: int, i: int) -> int:
            return x + (i % 3) * m

        triples = [tuple(sorted((pt(x, 0), pt(x, 1), pt(x, 2)))) for x in range(m)]
        for i in range(3):
            for x in range(m):
                for y in range(x + 1, m):
                    z = (half * (x + y)) % m
                    triples.append(tuple(sorted((pt(x, i), pt(y, i), pt(z, i + 1)))))
        sts = TripleSystem(v, tuple(sorted(triples)))
    else:
        raise DomainError(f"no construction for v={v}: supported orders are v = 3 (mod 6) and v = 7")
    if not sts.is_steiner():
        raise AssertionError(f"construction for v={v} is not a Steiner system")
    return sts


def admissible_steiner_order(count: int) -> int:
    """Largest v <= count with v = 7 or v = 3 (mod 6)."""
    for v in range(count, 2, -1):
        if v == 7 or v % 6 == 3:
            return v
    raise DomainError(f"no supported Steiner order <= {count}")


def erdos38_set(x: int) -> tuple[IntegerSet, TripleSystem]:
    """Primes in (x^(1/3), x] together with Steiner-triple products of small primes.

    The triple system lives on the longest prefix of the primes <= x^(1/3)
    whose length is a supported order.
    """
    if x < 8:
        raise DomainError("x must be at least 8")
    table = sieve(x)
    c = iroot(x, 3)
    small = table.primes_upto(c).tolist()
    v = admissible_steiner_order(len(small))
    sts = steiner_triple_system(v)
    prods = [small[a] * small[b] * small[d] for a, b, d in sts.triples]
    large = table.primes[len(small) :].tolist()
    return IntegerSet(prods + large, table), sts


def omega_level(x: int) -> int:
    """floor(log log x) with natural logarithms."""
    with mpmath.workdps(40):
        return int(mpmath.floor(mpmath.log(mpmath.log(x))))


def omega_level_set(x: int) -> IntegerSet:
    """{a <= x : Omega(a) = floor(log log x)}, a primitive set."""
    level = omega_level(x) if x > 2 else 0
    if level < 1:
        raise DomainError(f"floor(log log {x}) = {level} < 1")
    om = omega_table(x)
    return IntegerSet(np.flatnonzero(om == level).tolist())


# -- exhaustive enumeration of small 2-primitive subsets ----------------------


def extension_masks(universe: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Bitmasks of forbidden extensions over a sorted universe.

    ``pair[i]`` marks j comparable with u_i under divisibility (and i
    itself); ``triple[i][j]`` marks l such that {u_i, u_j, u_l} contains a
    divisibility-of-product violation.
    """
    u = list(universe)
    n = len(u)
    pair = [0] * n
    for i, a in enumerate(u):
        m = 1 << i
        for j, b in enumerate(u):
            if b % a == 0 or a % b == 0:
                m |= 1 << j
        pair[i] = m
    triple = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = u[i], u[j]
            m = 0
            for l, c in enumerate(u):
                if (a * b) % c == 0 or (b * c) % a == 0 or (a * c) % b == 0:
                    m |= 1 << l
            triple[i][j] = triple[j][i] = m
    return pair, triple


def iter_two_primitive_subsets(universe: Sequence[int], max_size: int) -> Iterator[tuple[int, ...]]:
    """Every 2-primitive subset (including the empty set) of size <= max_size.

    Subsets come out in lexicographic order of their increasing element
    tuples.
    """
    u = sorted(universe)
    pair, triple = extension_masks(u)
    full = (1 << len(u)) - 1

    def rec(path: list[int], allowed: int) -> Iterator[tuple[int, ...]]:
        yield tuple(u[i] for i in path)
        if len(path) == max_size:
            return
        a = allowed
        while a:
            j = (a & -a).bit_length() - 1
            a &= a - 1
            child = a & ~pair[j]
            for s in path:
                child &= ~triple[s][j]
            path.append(j)
            yield from rec(path, child)
            path.pop()

    yield from rec([], full)
