import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from kprimitive.arith import omega, sieve
from kprimitive.combinatorics import (
    admissible_steiner_order,
    erdos38_set,
    erdos_szekeres,
    iter_two_primitive_subsets,
    omega_level,
    omega_level_set,
    steiner_triple_system,
)
from kprimitive.errors import DomainError, PreconditionError
from kprimitive.primitivity import IntegerSet, is_k_primitive


def test_erdos_szekeres_examples():
    assert erdos_szekeres([5, 4, 3, 2, 1], 3, 3) == ("nonincreasing", [0, 1, 2])
    with pytest.raises(PreconditionError):
        erdos_szekeres([1, 2, 3], 3, 3)


@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_erdos_szekeres_length_five(seq):
    direction, idx = erdos_szekeres(seq, 3, 3)
    vals = [seq[i] for i in idx]
    assert len(idx) == 3 and idx == sorted(set(idx))
    pairs = zip(vals, vals[1:])
    assert all(a <= b for a, b in pairs) if direction == "nondecreasing" else all(a >= b for a, b in pairs)


@pytest.mark.parametrize("v,count", [(3, 1), (7, 7), (9, 12), (15, 35), (21, 70), (27, 117)])
def test_steiner_systems(v, count):
    sts = steiner_triple_system(v)
    assert len(sts.triples) == count
    assert all(c == 1 for c in sts.pair_coverage().values())
    assert len(sts.pair_coverage()) == v * (v - 1) // 2


def test_steiner_small_cases_explicit():
    assert steiner_triple_system(3).triples == ((0, 1, 2),)
    for v in (1, 5, 13):
        with pytest.raises(DomainError):
            steiner_triple_system(v)


def test_admissible_order():
    assert admissible_steiner_order(25) == 21
    assert admissible_steiner_order(4) == 3
    assert admissible_steiner_order(8) == 7
    with pytest.raises(DomainError):
        admissible_steiner_order(2)


def test_erdos38_small_case():
    A, sts = erdos38_set(1000)
    assert sts.v == 3 and 30 in A
    assert len(A) == 1 + sieve(1000).pi(1000) - 4
    assert is_k_primitive(A, 2)


def test_erdos38_million_uses_21_points():
    _, sts = erdos38_set(10**6)
    assert sts.v == 21 and len(sts.triples) == 70


def test_omega_level_sets():
    assert omega_level(16) == 1
    assert list(omega_level_set(16)) == [2, 3, 5, 7, 11, 13]
    assert omega_level(10**4) == 2
    A = omega_level_set(10**4)
    oracle = [n for n in range(2, 10**4 + 1) if omega(n) == 2]
    assert list(A) == oracle
    assert is_k_primitive(A.subset(list(A)[:300]), 1)
    with pytest.raises(DomainError):
        omega_level_set(10)


def naive_two_primitive(S) -> bool:
    return all(
        math.prod(c) % a for a in S for j in (1, 2) for c in itertools.combinations([b for b in S if b != a], j)
    )


def test_subset_enumeration_matches_brute_force():
    universe = list(range(2, 19))
    ours = set(iter_two_primitive_subsets(universe, 4))
    oracle = {
        c for r in range(5) for c in itertools.combinations(universe, r) if naive_two_primitive(c)
    }
    assert ours == oracle


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_enumerated_subsets_pass_checker(seed):
    rng = random.Random(seed)
    subsets = list(iter_two_primitive_subsets(range(2, 31), 3))
    for A in rng.sample(subsets, 20):
        if A:
            assert is_k_primitive(IntegerSet(A), 2)
