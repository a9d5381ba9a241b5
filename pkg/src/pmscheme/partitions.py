"""Integer partition combinatorics.

Partitions are plain tuples of positive integers in non-increasing order,
e.g. ``(4, 2, 2)``. Functions accept any sequence and normalise through
:func:`as_partition`.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple


class PartitionError(ValueError):
    pass


def as_partition(parts: Sequence[int]) -> Partition:
    p = tuple(int(x) for x in parts)
    if any(x < 1 for x in p):
        raise PartitionError(f"parts must be positive: {list(parts)}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise PartitionError(f"parts must be non-increasing: {list(parts)}")
    return p


def is_even_partition(parts: Sequence[int]) -> bool:
    return len(parts) > 0 and all(x >= 2 and x % 2 == 0 for x in parts)


def double_factorial(n: int) -> int:
    """n!! with the empty-product convention (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def even_partitions(two_k: int) -> tuple[Partition, ...]:
    """Even partitions of 2k in reverse-lexicographic order."""
    if two_k < 2 or two_k % 2:
        raise PartitionError(f"expected a positive even integer, got {two_k}")
    return tuple(tuple(2 * x for x in p) for p in partitions(two_k // 2))


def _prefix_sums(p: Sequence[int], length: int) -> list[int]:
    out, s = [], 0
    for i in range(length):
        s += p[i] if i < len(p) else 0
        out.append(s)
    return out


def dominance_geq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True iff mu dominates lam (every prefix sum of mu is >= that of lam)."""
    if sum(mu) != sum(lam):
        raise PartitionError(f"{list(mu)} and {list(lam)} have different sums")
    length = max(len(mu), len(lam))
    return all(a >= b for a, b in zip(_prefix_sums(mu, length), _prefix_sums(lam, length)))


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def is_primary(lam: Sequence[int]) -> bool:
    return dominance_geq(lam, conjugate(lam))


def has_subpartition_sum(lam: Sequence[int], s: int) -> bool:
    """Subset-sum over the parts of lam."""
    if s < 0 or s > sum(lam):
        return False
    reach = 1
    for x in lam:
        reach |= reach << x
    return bool((reach >> s) & 1)


def hook_lengths(lam: Sequence[int]) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def hook_dimension(lam: Sequence[int]) -> int:
    """Dimension of the Specht module S^lam via the hook-length formula."""
    n = sum(lam)
    return math.factorial(n) // math.prod(hook_lengths(lam))


def two_row_multiplicity(two_k: int, ell: int) -> int:
    if not 0 <= ell <= two_k // 2:
        raise ValueError(f"ell={ell} out of range for 2k={two_k}")
    below = math.comb(two_k, ell - 1) if ell >= 1 else 0
    return math.comb(two_k, ell) - below


def F_bound(n: int) -> int:
    """Lower bound on primary module dimensions, recursion as printed:
    F(2m+1) = (2m+1) F(2m) (m+2), F(2m) = 2 F(2m-1), F(0) = 2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    value = 2
    for j in range(1, n + 1):
        if j % 2:
            value = j * value * ((j - 1) // 2 + 2)
        else:
            value = 2 * value
    return value


def F_growth_audit(n_max: int, n_min: int = 8) -> list[dict]:
    """Check 3/2 F(n-1) <= F(n) <= 2 F(n-1) for n_min <= n <= n_max."""
    rows = []
    for n in range(n_min, n_max + 1):
        prev, cur = F_bound(n - 1), F_bound(n)
        ok = 3 * prev <= 2 * cur and cur <= 2 * prev
        rows.append({"n": n, "F(n-1)": prev, "F(n)": cur, "holds": ok})
    return rows


def _horizontal_strips(shape: Partition, size: int) -> Iterator[Partition]:
    """Shapes nu containing `shape` with nu/shape a horizontal strip of `size` boxes."""
    rows = list(shape) + [0]

    def rec(i: int, remaining: int, acc: list[int]) -> Iterator[Partition]:
        if i == len(rows):
            if remaining == 0:
                yield tuple(x for x in acc if x > 0)
            return
        cap = remaining if i == 0 else min(remaining, rows[i - 1] - rows[i])
        for add in range(cap, -1, -1):
            yield from rec(i + 1, remaining - add, acc + [rows[i] + add])

    yield from rec(0, size, [])


@lru_cache(maxsize=None)
def kostka_number(shape: Partition, content: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of the given shape and content.

    Used only to count how often a module's eigenvalue repeats inside a
    Young-subgroup quotient.
    """
    if sum(shape) != sum(content):
        return 0
    counts: dict[Partition, int] = {(): 1}
    for c in content:
        nxt: dict[Partition, int] = {}
        for sh, cnt in counts.items():
            for bigger in _horizontal_strips(sh, c):
                if all(i < len(shape) and bigger[i] <= shape[i] for i in range(len(bigger))):
                    nxt[bigger] = nxt.get(bigger, 0) + cnt
        counts = nxt
    return counts.get(tuple(shape), 0)


def fmt(lam: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in lam) + "]"


def parse_partition(text: str, k: int | None = None) -> Partition:
    """Parse "4,2,2" or symbolic "2k-4,2,2" (needs k)."""
    parts = []
    for tok in text.replace("[", "").replace("]", "").split(","):
        tok = tok.strip().replace(" ", "")
        if not tok:
            continue
        if "k" in tok:
            if k is None:
                raise PartitionError(f"symbolic part {tok!r} needs k")
            parts.append(_eval_linear_in_k(tok, k))
        else:
            parts.append(int(tok))
    return as_partition(parts)


def _eval_linear_in_k(tok: str, k: int) -> int:
    # forms: "2k", "2k-4", "k+1", "2k+2"
    head, sign, tail = tok.partition("-") if "-" in tok else tok.partition("+")
    coef_txt = head[: head.index("k")]
    coef = int(coef_txt) if coef_txt else 1
    offset = int(tail) if tail else 0
    return coef * k + (-offset if sign == "-" else offset)
