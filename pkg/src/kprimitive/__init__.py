"""Tools for k-primitive integer sets.

Checks and certificates, reduction steps, extremal searches, constructions,
prime-sum constants and the numeric bounds for sets with small largest
prime factor.
"""

from .arith import ExponentVector, PrimeTable, balanced_split, factorize, sieve
from .combinatorics import erdos38_set, erdos_szekeres, omega_level_set, steiner_triple_system
from .errors import DomainError, InvariantError, KPrimitiveError, PreconditionError, SetFileError
from .matching import build_matching
from .precision import PrecisionContext, SumResult
from .primitivity import (
    IntegerSet,
    RationalWeight,
    check_lemma5,
    find_violation,
    is_k_primitive,
    is_primitive,
    prime_relabel,
    replacement_reduction,
)
from .search import SearchConfig, SearchResult, max_kprimitive_search

__version__ = "0.1.0"

__all__ = [
    "ExponentVector",
    "PrimeTable",
    "balanced_split",
    "factorize",
    "sieve",
    "erdos38_set",
    "erdos_szekeres",
    "omega_level_set",
    "steiner_triple_system",
    "DomainError",
    "InvariantError",
    "KPrimitiveError",
    "PreconditionError",
    "SetFileError",
    "build_matching",
    "PrecisionContext",
    "SumResult",
    "IntegerSet",
    "RationalWeight",
    "check_lemma5",
    "find_violation",
    "is_k_primitive",
    "is_primitive",
    "prime_relabel",
    "replacement_reduction",
    "SearchConfig",
    "SearchResult",
    "max_kprimitive_search",
]
