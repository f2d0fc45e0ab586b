"""Exhaustive search for the largest k-primitive set of capped exponent vectors.

Candidates are the nonzero vectors over the first n primes with entries
bounded by per-coordinate caps, ordered by (integer value, exponent tuple).
The search is a depth-first branch and bound over increasing index tuples:

* pair masks drop candidates comparable with a chosen vector;
* for k >= 2, a precomputed mask per chosen pair drops every candidate that
  would create a violation inside a triple;
* for k >= 3 the full checker runs on each new set;
* a node is kept only if its index tuple is the lexicographically smallest
  image under the permutations of coordinates with equal caps.

The lexmin condition is inherited by prefixes, so pruning never loses an
orbit, and the first maximum set found is the lexicographically smallest
maximum set.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .arith import ExponentVector, first_primes
from .errors import DomainError, PreconditionError
from .primitivity import IntegerSet, find_violation

__all__ = ["SearchConfig", "SearchResult", "max_kprimitive_search", "candidate_vectors"]

CHECKPOINT_FORMAT = "kprimitive-search-checkpoint"
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    caps: tuple[int, ...]
    budget: int | None = None
    checkpoint: str | None = None
    symmetry: bool = True
    checkpoint_every: int = 200_000

    def __post_init__(self):
        caps = (self.caps,) * self.n if isinstance(self.caps, int) else tuple(self.caps)
        object.__setattr__(self, "caps", caps)
        if self.n < 1 or self.k < 1:
            raise DomainError("n and k must be at least 1")
        if len(caps) != self.n or any(c < 1 for c in caps):
            raise DomainError("need one cap >= 1 per coordinate")
        if self.budget is not None and self.budget < 1:
            raise DomainError("node budget must be positive")

    def digest(self) -> str:
        """Hash of the fields that determine the search tree."""
        key = json.dumps({"n": self.n, "k": self.k, "caps": list(self.caps), "symmetry": self.symmetry})
        return hashlib.sha256(key.encode()).hexdigest()


@dataclass
class SearchResult:
    best: list[ExponentVector]
    cardinality: int
    exhaustive: bool
    nodes: int
    state: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def values(self) -> list[int]:
        return [v.value for v in self.best]

    def to_dict(self) -> dict:
        return {
            "cardinality": self.cardinality,
            "exhaustive": self.exhaustive,
            "nodes": self.nodes,
            "elapsed_seconds": round(self.elapsed, 3),
            "best": [{"value": v.value, "exponents": list(v.exps)} for v in self.best],
        }


def candidate_vectors(n: int, caps: tuple[int, ...]) -> list[tuple[int, ...]]:
    primes = first_primes(n)

    def value(v):
        out = 1
        for p, e in zip(primes, v):
            out *= p**e
        return out

    vecs = [v for v in itertools.product(*(range(c + 1) for c in caps)) if any(v)]
    vecs.sort(key=lambda v: (value(v), v))
    return vecs


def _bits(rows: np.ndarray) -> list[int]:
    packed = np.packbits(rows, axis=-1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


class _Tree:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.primes = first_primes(cfg.n)
        self.vecs = candidate_vectors(cfg.n, cfg.caps)
        V = np.array(self.vecs, dtype=np.int16)
        self.V = V
        size = len(V)
        le = (V[:, None, :] <= V[None, :, :]).all(-1)
        self.pair = _bits(le | le.T)
        self.forbid: list[list[int]] | None = None
        if cfg.k >= 2:
            self.forbid = []
            sums = V[:, None, :] + V[None, :, :]
            diffs = V[:, None, :] - V[None, :, :]
            for a in range(size):
                b_under = (diffs <= V[a]).all(-1)  # [b, c]: b | a*c; transposed, c | a*b
                a_under = (V[a] <= sums).all(-1)  # a | b*c
                self.forbid.append(_bits(b_under | b_under.T | a_under))
        index = {v: i for i, v in enumerate(self.vecs)}
        self.images: list[list[int]] = []
        if cfg.symmetry:
            for perm in itertools.permutations(range(cfg.n)):
                if perm == tuple(range(cfg.n)) or any(cfg.caps[i] != cfg.caps[perm[i]] for i in range(cfg.n)):
                    continue
                self.images.append([index[tuple(v[i] for i in perm)] for v in self.vecs])

    def canonical(self, path: list[int]) -> bool:
        for img in self.images:
            if sorted(img[i] for i in path) < path:
                return False
        return True

    def extends(self, path: list[int], j: int) -> bool:
        if self.cfg.k < 3:
            return True
        values = [self.vector(i).value for i in path + [j]]
        return find_violation(IntegerSet(values), self.cfg.k) is None

    def child_mask(self, path: list[int], rest: int, j: int) -> int:
        m = rest & ~self.pair[j]
        if self.forbid is not None:
            row = self.forbid[j]
            for s in path:
                m &= ~row[s]
        return m

    def vector(self, i: int) -> ExponentVector:
        return ExponentVector(tuple(self.primes), self.vecs[i])


def _load_checkpoint(path: str, cfg: SearchConfig) -> dict | None:
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        state = json.load(fh)
    if state.get("format") != CHECKPOINT_FORMAT or state.get("version") != CHECKPOINT_VERSION:
        raise PreconditionError(f"{path} is not a version {CHECKPOINT_VERSION} search checkpoint")
    if state.get("config_hash") != cfg.digest():
        raise PreconditionError(f"checkpoint {path} was written for a different search configuration")
    return state


def _save_checkpoint(path: str, state: dict) -> None:
    tmp = Path(path).with_suffix(".tmp")
    tmp.write_text(json.dumps(state))
    os.replace(tmp, path)


def max_kprimitive_search(cfg: SearchConfig) -> SearchResult:
    """Largest k-primitive subset of the capped candidate space.

    With ``cfg.checkpoint`` set, an existing checkpoint for the same
    configuration is resumed and progress is written back periodically and
    on exit.  A finished checkpoint returns its stored answer.
    """
    start = time.perf_counter()
    tree = _Tree(cfg)
    full = (1 << len(tree.vecs)) - 1

    path: list[int] = []
    best: list[int] = []
    nodes = 0
    done = False
    saved = _load_checkpoint(cfg.checkpoint, cfg) if cfg.checkpoint else None
    if saved is not None:
        path, best, nodes, done = list(saved["path"]), list(saved["best"]), saved["nodes"], saved["complete"]

    # rest[d]: candidates still to try below the node path[:d]
    rest = [full]
    for d, j in enumerate(path):
        rest[d] &= ~((1 << (j + 1)) - 1)
        rest.append(tree.child_mask(path[:d], rest[d], j))
    if saved is None:
        nodes = 1  # the empty set

    def snapshot(complete: bool) -> dict:
        return {
            "format": CHECKPOINT_FORMAT,
            "version": CHECKPOINT_VERSION,
            "config_hash": cfg.digest(),
            "config": {"n": cfg.n, "k": cfg.k, "caps": list(cfg.caps), "symmetry": cfg.symmetry},
            "path": list(path),
            "best": list(best),
            "nodes": nodes,
            "complete": complete,
        }

    budget = cfg.budget
    exhausted = False
    since_save = 0
    while rest and not done:
        d = len(path)
        r = rest[d]
        if r == 0 or d + r.bit_count() <= len(best):
            rest.pop()
            if path:
                path.pop()
            else:
                break
            continue
        j = (r & -r).bit_length() - 1
        rest[d] = r & (r - 1)
        path.append(j)
        if not tree.canonical(path) or not tree.extends(path[:-1], j):
            path.pop()
            continue
        rest.append(tree.child_mask(path[:-1], rest[d], j))
        nodes += 1
        if len(path) > len(best):
            best = list(path)
        if budget is not None and nodes >= budget:
            exhausted = True
            break
        since_save += 1
        if cfg.checkpoint and since_save >= cfg.checkpoint_every:
            _save_checkpoint(cfg.checkpoint, snapshot(False))
            since_save = 0

    # on exhaustion the stored path is a node whose children are untouched
    complete = done or not exhausted
    state = snapshot(complete)
    if cfg.checkpoint:
        _save_checkpoint(cfg.checkpoint, state)
    vectors = [tree.vector(i) for i in best]
    return SearchResult(vectors, len(vectors), complete, nodes, state, time.perf_counter() - start)
