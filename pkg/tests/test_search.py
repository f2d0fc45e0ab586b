import itertools
import json
import math

import pytest

from kprimitive.arith import first_primes
from kprimitive.errors import DomainError, PreconditionError
from kprimitive.primitivity import IntegerSet, is_k_primitive
from kprimitive.search import SearchConfig, candidate_vectors, max_kprimitive_search


def smooth_space(n, cap):
    primes = first_primes(n)
    return [math.prod(p**e for p, e in zip(primes, v)) for v in candidate_vectors(n, (cap,) * n)]


def k_free(S, k):
    return all(
        math.prod(c) % a
        for a in S
        for j in range(1, k + 1)
        for c in itertools.combinations([b for b in S if b != a], j)
    )


def brute_force_max(n, cap, k):
    space = smooth_space(n, cap)
    best = 0
    for r in range(1, len(space) + 1):
        if any(k_free(c, k) for c in itertools.combinations(space, r)):
            best = r
        elif r > best + 1:
            break
    return best


@pytest.mark.parametrize("n,cap,k", [(2, 2, 2), (2, 3, 2), (2, 3, 1), (3, 1, 2), (3, 1, 1), (2, 4, 3), (3, 2, 3)])
def test_matches_brute_force(n, cap, k):
    res = max_kprimitive_search(SearchConfig(n=n, k=k, caps=cap))
    assert res.exhaustive
    assert res.cardinality == brute_force_max(n, cap, k)
    assert is_k_primitive(IntegerSet(res.values), k)


def test_small_examples():
    res = max_kprimitive_search(SearchConfig(n=2, k=2, caps=6))
    assert res.cardinality == 2 and res.exhaustive
    assert len(candidate_vectors(2, (6, 6))) == 48


@pytest.mark.parametrize("n,cap", [(2, 3), (3, 2), (3, 3)])
def test_symmetry_pruning_is_sound(n, cap):
    a = max_kprimitive_search(SearchConfig(n=n, k=2, caps=cap))
    b = max_kprimitive_search(SearchConfig(n=n, k=2, caps=cap, symmetry=False))
    assert a.cardinality == b.cardinality


def test_cap_monotone():
    sizes = [max_kprimitive_search(SearchConfig(n=3, k=2, caps=c)).cardinality for c in (1, 2, 3)]
    assert sizes == sorted(sizes)
    mixed = max_kprimitive_search(SearchConfig(n=3, k=2, caps=(1, 2, 3))).cardinality
    assert sizes[0] <= mixed <= sizes[2]


def test_budget_gives_lower_bound():
    res = max_kprimitive_search(SearchConfig(n=4, k=2, caps=2, budget=50))
    assert not res.exhaustive and res.nodes <= 50 + 1
    assert is_k_primitive(IntegerSet(res.values), 2) or res.cardinality <= 1


def test_checkpoint_resume_reproduces_result(tmp_path):
    path = str(tmp_path / "ck.json")
    full = max_kprimitive_search(SearchConfig(n=4, k=2, caps=2))
    runs = 0
    while True:
        res = max_kprimitive_search(SearchConfig(n=4, k=2, caps=2, budget=300, checkpoint=path))
        runs += 1
        if res.exhaustive:
            break
        assert runs < 1000
    assert runs > 1
    assert res.cardinality == full.cardinality and res.values == full.values
    state = json.loads(open(path).read())
    assert state["complete"] and state["format"] == "kprimitive-search-checkpoint"


def test_checkpoint_hash_mismatch(tmp_path):
    path = str(tmp_path / "ck.json")
    max_kprimitive_search(SearchConfig(n=3, k=2, caps=2, budget=10, checkpoint=path))
    with pytest.raises(PreconditionError):
        max_kprimitive_search(SearchConfig(n=3, k=2, caps=3, checkpoint=path))


def test_config_validation():
    with pytest.raises(DomainError):
        SearchConfig(n=0, k=2, caps=1)
    with pytest.raises(DomainError):
        SearchConfig(n=2, k=2, caps=(1,))
    with pytest.raises(DomainError):
        SearchConfig(n=2, k=2, caps=2, budget=0)
