"""k-primitivity checking and the set-reduction procedures.

A set A of integers > 1 is k-primitive when no element divides a product of
j distinct other elements for any 1 <= j <= k.  Every "find a violation"
routine here returns the smallest certificate under the order
(a, number of witnesses, witness tuple), so results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import mpmath

from .arith import ExponentVector, PrimeTable, default_table, factorize, first_primes
from .errors import DomainError, InvariantError, PreconditionError

__all__ = [
    "IntegerSet",
    "ViolationCertificate",
    "CheckResult",
    "RationalWeight",
    "LAMBDA_ONE",
    "LAMBDA_DEFAULT",
    "is_primitive",
    "is_k_primitive",
    "find_violation",
    "prime_composite_split",
    "tp_subset",
    "replacement_reduction",
    "ReplacementStep",
    "quotient_set",
    "QuotientMap",
    "check_lemma5",
    "Lemma5Report",
    "prime_relabel",
    "lambda1_holds",
]


class IntegerSet:
    """Finite set of integers > 1 with cached prime factorizations."""

    __slots__ = ("elements", "factorizations", "support", "_index")

    def __init__(self, elements: Iterable[int], table: PrimeTable | None = None):
        elems = [int(e) for e in elements]
        if any(e <= 1 for e in elems):
            bad = min(e for e in elems if e <= 1)
            raise DomainError(f"set elements must exceed 1 (got {bad})")
        if len(set(elems)) != len(elems):
            raise DomainError("set elements must be distinct")
        self.elements: tuple[int, ...] = tuple(sorted(elems))
        if table is None and self.elements:
            top = self.elements[-1]
            table = default_table(top) if top <= 1 << 22 else None
        self.factorizations: dict[int, ExponentVector] = {
            e: factorize(e, table) for e in self.elements
        }
        primes: set[int] = set()
        for fv in self.factorizations.values():
            primes.update(fv.support)
        self.support: tuple[int, ...] = tuple(sorted(primes))
        self._index: dict[int, list[int]] | None = None

    @classmethod
    def _from_factored(cls, items: dict[int, ExponentVector]) -> "IntegerSet":
        obj = cls.__new__(cls)
        obj.elements = tuple(sorted(items))
        obj.factorizations = dict(items)
        obj.support = tuple(sorted({p for fv in items.values() for p in fv.support}))
        obj._index = None
        return obj

    @classmethod
    def from_vectors(cls, vectors: Iterable[ExponentVector]) -> "IntegerSet":
        items = {}
        for v in vectors:
            clean = ExponentVector.from_dict(v.as_dict())
            if clean.value in items:
                raise DomainError("set elements must be distinct")
            items[clean.value] = clean
        return cls._from_factored(items)

    def subset(self, elements: Iterable[int]) -> "IntegerSet":
        return IntegerSet._from_factored({e: self.factorizations[e] for e in elements})

    def multiples_of(self, p: int) -> list[int]:
        """Elements divisible by the prime p, increasing."""
        if self._index is None:
            index: dict[int, list[int]] = {}
            for e in self.elements:
                for q in self.factorizations[e].support:
                    index.setdefault(q, []).append(e)
            self._index = index
        return self._index.get(p, [])

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, n: object) -> bool:
        return n in self.factorizations

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntegerSet):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        if len(self) > 12:
            head = ", ".join(map(str, self.elements[:10]))
            return f"IntegerSet([{head}, ... ({len(self)} elements)])"
        return f"IntegerSet({list(self.elements)})"


@dataclass(frozen=True)
class ViolationCertificate:
    """Witness that ``a`` divides the product of ``witnesses``."""

    a: int
    witnesses: tuple[int, ...]
    checked_product: int

    @property
    def kind(self) -> str:
        return "divides" if len(self.witnesses) == 1 else "divides-product"

    def verify(self) -> bool:
        """Re-check the claim by exponent arithmetic."""
        if self.a in self.witnesses or len(set(self.witnesses)) != len(self.witnesses):
            return False
        need = factorize(self.a).as_dict()
        have: dict[int, int] = {}
        for w in self.witnesses:
            for p, e in factorize(w).as_dict().items():
                have[p] = have.get(p, 0) + e
        return all(have.get(p, 0) >= e for p, e in need.items())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "a": self.a,
            "witnesses": list(self.witnesses),
            "checked_product": str(self.checked_product),
        }

    def __str__(self) -> str:
        return f"{self.a} | {'*'.join(map(str, self.witnesses))}"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a k-primitivity check.

    ``vacuous`` is set when |A| < k + 1: the k-fold condition cannot be
    posed, although every j-fold condition with j < |A| was still checked.
    """

    ok: bool
    k: int
    certificate: ViolationCertificate | None = None
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.ok


def _covering_witnesses(
    target: tuple[int, ...], vecs: Sequence[tuple[int, ...]], j: int
) -> tuple[int, ...] | None:
    """Lexicographically first j indices whose capped vectors sum to >= target."""
    n = len(vecs)
    if n < j:
        return None
    dims = len(target)
    # suffix maxima per coordinate for the slot-budget bound
    suffix = [[0] * dims for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        v = vecs[i]
        nxt = suffix[i + 1]
        suffix[i] = [max(v[c], nxt[c]) for c in range(dims)]

    chosen: list[int] = []

    def rec(start: int, deficit: list[int], slots: int) -> bool:
        if slots == 0:
            return all(d <= 0 for d in deficit)
        for i in range(start, n - slots + 1):
            sm = suffix[i]
            if any(deficit[c] > slots * sm[c] for c in range(dims)):
                return False
            v = vecs[i]
            chosen.append(i)
            if rec(i + 1, [deficit[c] - v[c] for c in range(dims)], slots - 1):
                return True
            chosen.pop()
        return False

    if rec(0, list(target), j):
        return tuple(chosen)
    return None


def find_violation(A: IntegerSet, k: int) -> ViolationCertificate | None:
    """Smallest certificate that A is not k-primitive, or None."""
    if k < 1:
        raise DomainError("k must be at least 1")
    jmax = min(k, len(A) - 1)
    if jmax < 1:
        return None
    fac = A.factorizations
    for a in A.elements:
        va = fac[a].as_dict()
        primes = list(va)
        target = tuple(va[p] for p in primes)
        cand = sorted({b for p in primes for b in A.multiples_of(p)} - {a})
        if not cand:
            continue
        vecs = []
        for b in cand:
            db = fac[b].as_dict()
            vecs.append(tuple(min(db.get(p, 0), va[p]) for p in primes))
        for j in range(1, min(jmax, len(cand)) + 1):
            hit = _covering_witnesses(target, vecs, j)
            if hit is not None:
                wit = tuple(cand[i] for i in hit)
                return ViolationCertificate(a, wit, math.prod(wit))
    return None


def is_k_primitive(A: IntegerSet, k: int) -> CheckResult:
    cert = find_violation(A, k)
    return CheckResult(ok=cert is None, k=k, certificate=cert, vacuous=len(A) < k + 1)


def is_primitive(A: IntegerSet) -> CheckResult:
    return is_k_primitive(A, 1)


def prime_composite_split(A: IntegerSet) -> tuple[IntegerSet, IntegerSet]:
    """Partition A into its primes S and composites T."""
    fac = A.factorizations
    S = [a for a in A if sum(fac[a].exps) == 1]
    T = [a for a in A if sum(fac[a].exps) > 1]
    return A.subset(S), A.subset(T)


def tp_subset(T: IntegerSet, p: int) -> IntegerSet:
    """Members of T divisible by p."""
    return T.subset(T.multiples_of(p))


# -- weights ---------------------------------------------------------------


@dataclass(frozen=True)
class RationalWeight:
    """Exponent lambda in (0, 2), kept as an exact decimal.

    Power sums are exact rationals when lambda is an integer and 50-digit
    floats otherwise, so ties in the replacement test are decided exactly
    in the integer case.
    """

    literal: str
    value: Fraction = field(init=False, compare=False)

    def __post_init__(self):
        val = Fraction(str(self.literal))
        if not 0 < val < 2:
            raise DomainError(f"lambda must lie in (0, 2), got {self.literal}")
        object.__setattr__(self, "value", val)

    @classmethod
    def of(cls, lam: "RationalWeight | str | float | int") -> "RationalWeight":
        if isinstance(lam, RationalWeight):
            return lam
        return cls(repr(lam) if isinstance(lam, float) else str(lam))

    def __float__(self) -> float:
        return float(self.value)

    def power(self, n: int):
        if self.value.denominator == 1:
            return Fraction(1, n ** self.value.numerator)
        with mpmath.workdps(50):
            return mpmath.mpf(n) ** (-mpmath.mpf(self.value.numerator) / self.value.denominator)

    def power_sum(self, values: Iterable[int]):
        terms = [self.power(n) for n in values]
        if self.value.denominator == 1:
            return sum(terms, Fraction(0))
        with mpmath.workdps(50):
            return mpmath.fsum(terms)

    def __str__(self) -> str:
        return self.literal


LAMBDA_ONE = RationalWeight("1")
LAMBDA_DEFAULT = RationalWeight("0.7982562")


def lambda1_holds(T: IntegerSet, lam: RationalWeight) -> tuple[bool, int | None]:
    """Whether sum_{t in T_p} t^-lam > p^-lam for every p in P(T); else the first failing p."""
    for p in T.support:
        if not lam.power_sum(T.multiples_of(p)) > lam.power(p):
            return False, p
    return True, None


def _require_two_primitive(A: IntegerSet, what: str) -> None:
    cert = find_violation(A, 2)
    if cert is not None:
        raise PreconditionError(f"{what} is not 2-primitive: {cert}")


@dataclass(frozen=True)
class ReplacementStep:
    prime: int
    removed: tuple[int, ...]
    weight_before: float
    weight_after: float


def replacement_reduction(
    A: IntegerSet, lam: RationalWeight | str | float = LAMBDA_ONE
) -> tuple[IntegerSet, list[ReplacementStep]]:
    """Replace T_p by {p} while sum_{T_p} t^-lam <= p^-lam for some p in P(T).

    Primes are scanned in increasing order; passes repeat until one makes no
    change.  2-primitivity and the weight monotonicity are re-checked after
    every replacement.
    """
    lam = RationalWeight.of(lam)
    _require_two_primitive(A, "input set")
    log: list[ReplacementStep] = []
    current = A
    changed = True
    while changed:
        changed = False
        _, T = prime_composite_split(current)
        for p in T.support:
            _, T = prime_composite_split(current)
            Tp = T.multiples_of(p)
            if not Tp or lam.power_sum(Tp) > lam.power(p):
                continue
            before = lam.power_sum(current)
            items = {e: current.factorizations[e] for e in current if e not in set(Tp)}
            items[p] = ExponentVector((p,), (1,))
            nxt = IntegerSet._from_factored(items)
            after = lam.power_sum(nxt)
            if after < before:
                raise InvariantError(f"weight decreased replacing T_{p}")
            cert = find_violation(nxt, 2)
            if cert is not None:
                raise InvariantError(f"2-primitivity lost replacing T_{p}: {cert}")
            log.append(ReplacementStep(p, tuple(Tp), float(before), float(after)))
            current = nxt
            changed = True
    return current, log


@dataclass(frozen=True)
class QuotientMap:
    """The pairs (t, p, t/p) for p | t, and whether (t, p) -> t/p is injective."""

    triples: tuple[tuple[int, int, int], ...]
    collisions: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    @property
    def injective(self) -> bool:
        return not self.collisions

    @property
    def quotients(self) -> list[int]:
        return sorted({d for _, _, d in self.triples})


def quotient_set(T: IntegerSet) -> QuotientMap:
    triples = []
    seen: dict[int, tuple[int, int]] = {}
    collisions = []
    for t in T:
        for p in T.factorizations[t].support:
            d = t // p
            triples.append((t, p, d))
            if d in seen:
                collisions.append((seen[d], (t, p)))
            else:
                seen[d] = (t, p)
    return QuotientMap(tuple(triples), tuple(collisions))


@dataclass
class Lemma5Report:
    hypotheses_met: bool
    reason: str = ""
    properties: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return self.hypotheses_met and all(self.properties.values())


def check_lemma5(T: IntegerSet, lam: RationalWeight | str | float = LAMBDA_DEFAULT) -> Lemma5Report:
    """Evaluate the four structural properties of a compliant composite set.

    The hypotheses (2-primitive, and sum_{T_p} t^-lam > p^-lam for every
    p in P(T)) are checked first; if they fail nothing else is evaluated.
    """
    lam = RationalWeight.of(lam)
    cert = find_violation(T, 2)
    if cert is not None:
        return Lemma5Report(False, f"not 2-primitive: {cert}")
    ok, p_bad = lambda1_holds(T, lam)
    if not ok:
        return Lemma5Report(False, f"weight condition fails at p={p_bad}")
    rep = Lemma5Report(True)

    small = [p for p in T.support if len(T.multiples_of(p)) < 3]
    rep.properties["i"] = not small
    if small:
        rep.witnesses["i"] = small[0]

    qm = quotient_set(T)
    rep.properties["ii"] = qm.injective
    if qm.collisions:
        rep.witnesses["ii"] = qm.collisions[0]

    few = [t for t in T if sum(T.factorizations[t].exps) < 3]
    rep.properties["iii"] = not few
    if few:
        rep.witnesses["iii"] = few[0]

    D = qm.quotients
    prime_q = [d for d in D if d == 1 or sum(factorize(d).exps) == 1]
    if prime_q:
        rep.properties["iv"] = False
        rep.witnesses["iv"] = ("not composite", prime_q[0])
    else:
        dcert = find_violation(IntegerSet(D), 1) if D else None
        rep.properties["iv"] = dcert is None
        if dcert is not None:
            rep.witnesses["iv"] = ("not primitive", str(dcert))
    return rep


def _substitute(fv: ExponentVector, q: int, p: int) -> ExponentVector:
    d = fv.as_dict()
    if q in d:
        d[p] = d.get(p, 0) + d.pop(q)
    return ExponentVector.from_dict(d)


def prime_relabel(T: IntegerSet, lam: RationalWeight | str | float = LAMBDA_DEFAULT) -> IntegerSet:
    """Move the prime support of T onto an initial segment of the primes.

    At the smallest index i with q_i > p_i (q the sorted support, p the
    primes in order) every factor q_i is replaced by p_i.  The map is a
    monoid isomorphism onto its image, so divisibility relations are kept,
    and each element shrinks, so the power sum grows.
    """
    lam = RationalWeight.of(lam)
    _require_two_primitive(T, "input set")
    ok, p_bad = lambda1_holds(T, lam)
    if not ok:
        raise PreconditionError(f"weight condition fails at p={p_bad}")
    current = T
    while True:
        supp = current.support
        target = first_primes(len(supp))
        i = next((i for i, (q, p) in enumerate(zip(supp, target)) if q > p), None)
        if i is None:
            return current
        q, p = supp[i], target[i]
        items = {}
        for fv in current.factorizations.values():
            nv = _substitute(fv, q, p)
            items[nv.value] = nv
        nxt = IntegerSet._from_factored(items)
        if len(nxt) != len(current):
            raise InvariantError(f"relabel {q}->{p} merged elements")
        if not lam.power_sum(nxt) > lam.power_sum(current):
            raise InvariantError(f"relabel {q}->{p} did not increase the weight")
        cert = find_violation(nxt, 2)
        if cert is not None:
            raise InvariantError(f"relabel {q}->{p} broke 2-primitivity: {cert}")
        ok, p_bad = lambda1_holds(nxt, lam)
        if not ok:
            raise InvariantError(f"relabel {q}->{p} broke the weight condition at {p_bad}")
        current = nxt
