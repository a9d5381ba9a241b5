"""Perfect matchings of K_2k, union shapes and set-wise t-intersection.

A matching is a tuple of 1-based vertex pairs ``((a, b), ...)`` with ``a < b``
and pairs sorted by first endpoint.  Enumeration pairs the smallest uncovered
vertex first, which is lexicographic order on that tuple form; row and column
indices of every matrix in this package refer to that order.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .partitions import double_factorial, has_subpartition_sum

Matching = tuple

MAX_ENUMERATION_K = 8


class ResourceError(RuntimeError):
    """Requested size exceeds a documented resource guard."""


def canonical(pairs) -> Matching:
    return tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in pairs))


def validate(m: Matching, k: int) -> None:
    verts = sorted(v for e in m for v in e)
    if verts != list(range(1, 2 * k + 1)):
        raise ValueError(f"{m} is not a perfect matching of K_{2 * k}")


@dataclass
class MatchingFamily:
    k: int
    members: list = field(default_factory=list)

    def __post_init__(self):
        seen, uniq = set(), []
        for m in self.members:
            m = canonical(m)
            if m not in seen:
                seen.add(m)
                uniq.append(m)
        self.members = uniq

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def to_json(self) -> dict:
        return {"k": self.k, "members": [[list(e) for e in m] for m in self.members]}

    @classmethod
    def from_json(cls, obj: dict) -> "MatchingFamily":
        fam = cls(int(obj["k"]), [canonical(m) for m in obj["members"]])
        for m in fam.members:
            validate(m, fam.k)
        return fam

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json()))

    @classmethod
    def load(cls, path) -> "MatchingFamily":
        return cls.from_json(json.loads(Path(path).read_text()))


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > MAX_ENUMERATION_K:
        raise ResourceError(f"full enumeration is guarded at k <= {MAX_ENUMERATION_K} (got {k})")


def _pairings(verts: tuple):
    if not verts:
        yield ()
        return
    a = verts[0]
    for i in range(1, len(verts)):
        rest = verts[1:i] + verts[i + 1:]
        for tail in _pairings(rest):
            yield ((a, verts[i]),) + tail


def iter_matchings(k: int):
    _check_k(k)
    yield from _pairings(tuple(range(1, 2 * k + 1)))


@lru_cache(maxsize=4)
def _all_matchings(k: int) -> tuple:
    return tuple(iter_matchings(k))


def enumerate_matchings(k: int) -> MatchingFamily:
    """All (2k-1)!! perfect matchings of K_2k in canonical order."""
    fam = MatchingFamily.__new__(MatchingFamily)
    fam.k = k
    fam.members = list(_all_matchings(k))
    return fam


def count_matchings(k: int) -> int:
    return double_factorial(2 * k - 1)


def rank(m: Matching, k: int) -> int:
    """Index of m in the canonical enumeration order."""
    remaining = list(range(1, 2 * k + 1))
    partner = {}
    for a, b in m:
        partner[a], partner[b] = b, a
    idx = 0
    while remaining:
        a = remaining.pop(0)
        b = partner[a]
        pos = remaining.index(b)
        idx += pos * double_factorial(len(remaining) - 2)
        remaining.pop(pos)
    return idx


@lru_cache(maxsize=4)
def partner_array(k: int) -> np.ndarray:
    """(N, 2k) int8 array; row i gives the 0-based partner of each vertex in matching i."""
    ms = _all_matchings(k)
    out = np.empty((len(ms), 2 * k), dtype=np.int8)
    for i, m in enumerate(ms):
        for a, b in m:
            out[i, a - 1] = b - 1
            out[i, b - 1] = a - 1
    out.setflags(write=False)
    return out


def union_shape(P: Matching, Q: Matching) -> tuple:
    """Even cycle lengths of the multigraph P u Q, non-increasing."""
    p, q = {}, {}
    for a, b in P:
        p[a], p[b] = b, a
    for a, b in Q:
        q[a], q[b] = b, a
    if set(p) != set(q):
        raise ValueError("matchings are on different vertex sets")
    seen, lengths = set(), []
    for v in sorted(p):
        if v in seen:
            continue
        length, u = 0, v
        while True:
            w = p[u]
            seen.update((u, w))
            length += 2
            u = q[w]
            if u == v:
                break
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _check_t(k: int, t: int) -> None:
    if not 1 <= t <= k // 2:
        raise ValueError(f"t must satisfy 1 <= t <= floor(k/2); got t={t}, k={k}")


def setwise_t_intersecting_by_shape(P: Matching, Q: Matching, t: int) -> bool:
    k = len(P)
    _check_t(k, t)
    return has_subpartition_sum(union_shape(P, Q), 2 * t)


def setwise_t_intersecting_oracle(P: Matching, Q: Matching, t: int) -> bool:
    """Brute force over all t-subsets of edges of P and of Q."""
    k = len(P)
    _check_t(k, t)
    covers_p = {frozenset(v for e in sub for v in e) for sub in itertools.combinations(P, t)}
    return any(
        frozenset(v for e in sub for v in e) in covers_p
        for sub in itertools.combinations(Q, t)
    )


def canonical_family(k: int, t: int) -> MatchingFamily:
    """Matchings pairing {1..2t} among themselves: (2t-1)!!(2k-2t-1)!! members."""
    _check_t(k, t)
    low = tuple(range(1, 2 * t + 1))
    high = tuple(range(2 * t + 1, 2 * k + 1))
    members = sorted(canonical(a + b) for a in _pairings(low) for b in _pairings(high))
    return MatchingFamily(k, members)


def random_matching(k: int, rng: np.random.Generator) -> Matching:
    perm = rng.permutation(2 * k) + 1
    return canonical(zip(perm[0::2], perm[1::2]))
