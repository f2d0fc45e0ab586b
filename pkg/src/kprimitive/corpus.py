"""Seeded generators of 2-primitive sets for property checks and demos."""

from __future__ import annotations

import random
from typing import Sequence

from .arith import first_primes, smooth_numbers
from .combinatorics import steiner_triple_system
from .primitivity import IntegerSet, find_violation

__all__ = ["greedy_two_primitive", "random_two_primitive", "smooth_two_primitive", "steiner_products", "corpus"]


def greedy_two_primitive(pool: Sequence[int], rng: random.Random, max_size: int | None = None) -> IntegerSet:
    """Shuffle the pool and keep every element that leaves the set 2-primitive."""
    order = list(dict.fromkeys(n for n in pool if n > 1))
    rng.shuffle(order)
    chosen: list[int] = []
    for n in order:
        if max_size is not None and len(chosen) >= max_size:
            break
        if find_violation(IntegerSet(chosen + [n]), 2) is None:
            chosen.append(n)
    return IntegerSet(chosen)


def random_two_primitive(rng: random.Random, bound: int = 400, size: int = 12) -> IntegerSet:
    """A greedy 2-primitive subset of a random sample of [2, bound]."""
    pool = rng.sample(range(2, bound + 1), min(bound - 1, 4 * size))
    return greedy_two_primitive(pool, rng, size)


def smooth_two_primitive(rng: random.Random, n_primes: int = 4, cap: int = 4, size: int = 10) -> IntegerSet:
    """A greedy 2-primitive set of smooth numbers over the first few primes."""
    pool = smooth_numbers(first_primes(n_primes), cap)
    return greedy_two_primitive(rng.sample(pool, min(len(pool), 6 * size)), rng, size)


def steiner_products(rng: random.Random, v: int = 7, prime_pool: int = 30) -> IntegerSet:
    """Products p_a p_b p_c over the triples of a Steiner system on random primes.

    Each prime lies in (v - 1)/2 triples and two triples share at most one
    point, which makes the set 2-primitive.
    """
    sts = steiner_triple_system(v)
    primes = sorted(rng.sample(first_primes(prime_pool), v))
    return IntegerSet([primes[a] * primes[b] * primes[c] for a, b, c in sts.triples])


def corpus(seed: int = 0, count: int = 20, kind: str = "random") -> list[IntegerSet]:
    """``count`` sets from one generator, reproducible from ``seed``."""
    rng = random.Random(seed)
    make = {
        "random": lambda: random_two_primitive(rng, rng.choice([60, 200, 1000]), rng.randint(2, 14)),
        "smooth": lambda: smooth_two_primitive(rng, rng.randint(2, 5), rng.randint(2, 5), rng.randint(2, 12)),
        "steiner": lambda: steiner_products(rng, rng.choice([7, 9, 15])),
    }[kind]
    return [make() for _ in range(count)]
