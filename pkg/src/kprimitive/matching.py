"""Matching of a 2-primitive set into its balanced factor parts.

Each t is joined to m(t) and M(t), the two halves of its most balanced
factorization.  For a 2-primitive T a matching saturating T always exists;
we find it with a plain augmenting-path maximum matching and treat a
shortfall as an invariant violation.
"""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

from .arith import balanced_split
from .errors import InvariantError, PreconditionError
from .primitivity import IntegerSet, find_violation

__all__ = ["max_bipartite_matching", "build_matching", "balanced_parts"]


def max_bipartite_matching(
    left: Sequence[Hashable], adj: Mapping[Hashable, Sequence[Hashable]]
) -> dict:
    """Maximum matching by repeated augmenting paths (Kuhn's algorithm).

    Left vertices are processed in the given order and their neighbours in
    adjacency order, so the result is deterministic.
    """
    match_right: dict = {}

    def augment(u, seen: set) -> bool:
        for v in adj.get(u, ()):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in left:
        augment(u, set())
    return {u: v for v, u in match_right.items()}


def balanced_parts(T: IntegerSet) -> dict[int, tuple[int, int]]:
    return {t: balanced_split(t) for t in T}


def build_matching(T: IntegerSet, check: bool = True) -> dict[int, int]:
    """Injective map t -> m(t) or M(t) covering every t in T.

    m(t) is tried before M(t).  Raises PreconditionError if T is not
    2-primitive and InvariantError if no saturating matching is found.
    """
    if check:
        cert = find_violation(T, 2)
        if cert is not None:
            raise PreconditionError(f"set is not 2-primitive: {cert}")
    parts = balanced_parts(T)
    adj = {t: [m] if m == M else [m, M] for t, (m, M) in parts.items()}
    matching = max_bipartite_matching(list(T), adj)
    missing = [t for t in T if t not in matching]
    if missing:
        raise InvariantError(f"no saturating matching; {missing[0]} left unmatched")
    return dict(sorted(matching.items()))
