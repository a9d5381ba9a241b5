"""Young-subgroup orbit partitions, quotient matrices and eigenvalue extraction.

The orbits of Sym(b1) x Sym(b2) x ... (consecutive vertex blocks) on perfect
matchings are identified by how many edges join each pair of blocks.  The
resulting partition is equitable for every class of the scheme, so the
quotient's eigenvalues are eigenvalues of the class matrix; a root of the
quotient for subgroup mu lives on a module nu dominating mu, and repeats
K(nu, mu) times (a Kostka number).
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .exact import EigenResult, exact_eigenvalues, frac_str
from .matchings import ResourceError, _all_matchings, canonical, partner_array
from .partitions import (
    as_partition,
    dominance_geq,
    double_factorial,
    even_partitions,
    fmt,
    kostka_number,
)
from .scheme import class_degree, class_index

MAX_QUOTIENT_K = 7
CHARPOLY_MAX_DIM = 12


class ExtractionError(RuntimeError):
    pass


class EquitabilityError(RuntimeError):
    pass


def _block_of(blocks) -> np.ndarray:
    return np.repeat(np.arange(len(blocks)), blocks)


def _pair_order(nb: int) -> list:
    # (last, last), (last-1, last), (last-1, last-1), ... ; i <= j
    return sorted(((i, j) for i in range(nb) for j in range(i, nb)), key=lambda ij: (-ij[1], -ij[0]))


@dataclass
class OrbitPartition:
    k: int
    blocks: tuple
    cells: list
    signatures: list
    cell_of: np.ndarray = field(repr=False)

    @property
    def sizes(self) -> list:
        return [len(c) for c in self.cells]

    def __len__(self):
        return len(self.cells)


def orbit_signatures(k: int, blocks) -> np.ndarray:
    """Per matching, the edge count between every pair of blocks (in _pair_order)."""
    pa = partner_array(k).astype(np.int64)
    block = _block_of(blocks)
    nb = len(blocks)
    src = np.broadcast_to(block, pa.shape)
    dst = block[pa]
    lo, hi = np.minimum(src, dst), np.maximum(src, dst)
    code = lo * nb + hi
    counts = np.zeros((pa.shape[0], nb * nb), dtype=np.int64)
    rows = np.repeat(np.arange(pa.shape[0]), pa.shape[1])
    np.add.at(counts, (rows, code.ravel()), 1)
    cols = [i * nb + j for i, j in _pair_order(nb)]
    return counts[:, cols] // 2


def young_orbits(k: int, subgroup_shape) -> OrbitPartition:
    blocks = as_partition(subgroup_shape)
    if sum(blocks) != 2 * k:
        raise ValueError(f"subgroup shape {list(blocks)} is not a partition of {2 * k}")
    if k > MAX_QUOTIENT_K:
        raise ResourceError(f"orbit partitions are guarded at k <= {MAX_QUOTIENT_K}")
    sig = orbit_signatures(k, blocks)
    uniq, inverse = np.unique(sig, axis=0, return_inverse=True)
    order = np.lexsort(uniq.T[::-1])[::-1]  # descending lexicographic
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    cell_of = relabel[inverse.ravel()]
    cells = [np.flatnonzero(cell_of == c) for c in range(len(order))]
    return OrbitPartition(k, blocks, cells, [tuple(int(x) for x in uniq[o]) for o in order], cell_of)


def bfs_orbits(k: int, subgroup_shape) -> list:
    """Orbits by breadth-first search under adjacent transpositions inside each block."""
    blocks = as_partition(subgroup_shape)
    gens, start = [], 1
    for b in blocks:
        gens += [(v, v + 1) for v in range(start, start + b - 1)]
        start += b
    seen, orbits = set(), []
    for m in _all_matchings(k):
        if m in seen:
            continue
        orbit, queue = {m}, deque([m])
        while queue:
            cur = queue.popleft()
            for a, b in gens:
                swap = {a: b, b: a}
                img = canonical((swap.get(x, x), swap.get(y, y)) for x, y in cur)
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        seen |= orbit
        orbits.append(frozenset(orbit))
    return orbits


def _neighbor_counts(k: int, lam, rows, cell_of, ncells) -> np.ndarray:
    """(len(rows), ncells) neighbour counts into each cell for class lam."""
    ci = class_index(lam, k)
    rows = np.asarray(rows, dtype=np.int64)
    labels = kernels.class_labels(partner_array(k), rows=rows)
    out = np.zeros((len(rows), ncells), dtype=np.int64)
    for a in range(len(rows)):
        out[a] = np.bincount(cell_of[labels[a] == ci], minlength=ncells)
    return out


def is_equitable(partition: OrbitPartition, lam, rows=None) -> bool:
    """Neighbour counts into each cell constant over every cell.

    `partition` may be any OrbitPartition-like object with `cells` and
    `cell_of`; `lam` a class label or ClassMatrix.
    """
    lam = getattr(lam, "class_label", lam)
    ncells = len(partition.cells)
    for cell in partition.cells:
        members = cell if rows is None else cell[: rows]
        counts = _neighbor_counts(partition.k, lam, members, partition.cell_of, ncells)
        if not (counts == counts[0]).all():
            return False
    return True


def partition_from_cells(k: int, cells) -> OrbitPartition:
    n = sum(len(c) for c in cells)
    cell_of = np.empty(n, dtype=np.int64)
    for i, c in enumerate(cells):
        cell_of[np.asarray(c)] = i
    return OrbitPartition(k, (), [np.asarray(c) for c in cells], [None] * len(cells), cell_of)


@dataclass
class QuotientMatrix:
    k: int
    class_label: tuple
    subgroup_shape: tuple
    entries: list
    cell_sizes: list
    signatures: list

    @property
    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(len(self.entries)))

    @property
    def diagonal(self) -> list:
        return [self.entries[i][i] for i in range(len(self.entries))]

    @property
    def row_sums(self) -> list:
        return [sum(r) for r in self.entries]

    def eigen(self) -> EigenResult:
        return exact_eigenvalues(self.entries)


def quotient_matrix(lam, subgroup_shape, k: int, verify: str = "sample") -> QuotientMatrix:
    """Quotient of class lam over the Young orbits of subgroup_shape.

    verify: "none", "sample" (up to 8 vertices per cell) or "full".
    """
    lam = as_partition(lam)
    part = young_orbits(k, subgroup_shape)
    reps = [c[0] for c in part.cells]
    Q = _neighbor_counts(k, lam, reps, part.cell_of, len(part))
    if verify != "none":
        limit = None if verify == "full" else 8
        for i, cell in enumerate(part.cells):
            members = cell if limit is None else cell[:limit]
            counts = _neighbor_counts(k, lam, members, part.cell_of, len(part))
            if not (counts == Q[i]).all():
                raise EquitabilityError(f"class {fmt(lam)} not equitable on cell {i} of {fmt(part.blocks)}")
    entries = Q.tolist()
    deg = class_degree(lam, k)
    if any(sum(r) != deg for r in entries):
        raise EquitabilityError("quotient row sums differ from the class degree")
    return QuotientMatrix(k, lam, part.blocks, entries, part.sizes, part.signatures)


def default_ladder(k: int) -> list:
    """Dominance-descending subgroup ladder [2k], [2k-2,2], [2k-4,4], [2k-4,2,2], [2k-6,6]."""
    cands = [(2 * k,), (2 * k - 2, 2), (2 * k - 4, 4), (2 * k - 4, 2, 2), (2 * k - 6, 6)]
    out = []
    for c in cands:
        if all(x > 0 for x in c) and list(c) == sorted(c, reverse=True) and c not in out:
            out.append(c)
    return out


def full_ladder(k: int) -> list:
    """Every even partition of 2k, in reverse-lexicographic order (a linear extension of dominance)."""
    return list(even_partitions(2 * k))


def modules_in_quotient(k: int, subgroup_shape) -> dict:
    """Even modules nu with K(nu, subgroup) > 0, mapped to that multiplicity."""
    mu = as_partition(subgroup_shape)
    out = {}
    for nu in even_partitions(2 * k):
        if dominance_geq(nu, mu):
            K = kostka_number(nu, mu)
            if K:
                out[nu] = K
    return out


@dataclass
class EigenExtraction:
    k: int
    class_label: tuple
    entries: list = field(default_factory=list)  # (module, Fraction, source)
    checks: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {m: v for m, v, _ in self.entries}

    def to_json(self) -> dict:
        return {"class": list(self.class_label),
                "eigenvalues": [{"module": list(m), "value": frac_str(v), "source": s}
                                for m, v, s in self.entries]}


def extract_module_eigenvalues(lam, k: int, ladder=None, verify: str = "sample") -> EigenExtraction:
    """Walk a subgroup ladder, assigning each quotient's one unexplained root."""
    lam = as_partition(lam)
    ladder = default_ladder(k) if ladder is None else [as_partition(x) for x in ladder]
    out = EigenExtraction(k, lam)
    known: dict = {}
    for mu in ladder:
        present = modules_in_quotient(k, mu)
        new = [nu for nu in present if nu not in known]
        if mu == (2 * k,):
            value = Fraction(class_degree(lam, k))
            known[mu] = value
            out.entries.append((mu, value, "degree"))
            continue
        q = quotient_matrix(lam, mu, k, verify=verify)
        if len(q.entries) != sum(present.values()):
            raise ExtractionError(f"quotient {fmt(mu)} has {len(q.entries)} cells, expected {sum(present.values())}")
        explained = sum(present[nu] * known[nu] for nu in present if nu in known)
        tag = f"{fmt(lam)}/{fmt(mu)}"
        if len(new) != 1 or present[new[0]] != 1:
            raise ExtractionError(f"quotient {tag} introduces modules {[fmt(n) for n in new]}; ladder ambiguous")
        via_trace = Fraction(q.trace) - explained
        value, source = via_trace, f"trace:{tag}"
        if len(q.entries) <= CHARPOLY_MAX_DIM:
            eig = q.eigen()
            if eig.unresolved:
                raise ExtractionError(f"quotient {tag} has irrational or complex roots: {eig.unresolved}")
            remaining = Counter(Fraction(r) for r in eig.roots)
            for nu in present:
                if nu in known:
                    remaining[known[nu]] -= present[nu]
                    if remaining[known[nu]] < 0:
                        raise ExtractionError(f"quotient {tag} lacks known eigenvalue {known[nu]} of {fmt(nu)}")
            left = list((+remaining).elements())
            if len(left) != 1:
                raise ExtractionError(f"quotient {tag} leaves {len(left)} unexplained roots: {left}")
            value, source = left[0], f"charpoly:{tag}"
            out.checks.append({"quotient": tag, "charpoly": frac_str(left[0]),
                               "trace": frac_str(via_trace), "agree": left[0] == via_trace})
            if left[0] != via_trace:
                raise ExtractionError(f"trace shortcut disagrees with characteristic polynomial on {tag}")
        known[new[0]] = value
        out.entries.append((new[0], value, source))
    return out


# Appendix: printed diagonals of the quotients of class [2k-4,2,2].
def _df(n):
    return double_factorial(n)


def printed_appendix_diagonals(k: int) -> dict:
    F = Fraction
    out = {}

    def safe(fn):
        try:
            return fn()
        except (ValueError, ZeroDivisionError):
            return None

    out[(2 * k - 2, 2)] = [
        safe(lambda: F((k - 1) * _df(2 * k - 6))),
        safe(lambda: F(2 * k * k + k - 2, 4) * _df(2 * k - 6)),
    ]
    out[(2 * k - 4, 4)] = [
        safe(lambda: F(_df(2 * k - 6))),
        safe(lambda: F(9 * k - 20, 4) * _df(2 * k - 6)),
        safe(lambda: (k ** 3 - 7 * k ** 2 + F(75, 4) * k - F(87, 4)) * _df(2 * k - 8)),
    ]
    out[(2 * k - 6, 6)] = [
        F(0),
        safe(lambda: F((20 * k - 78) * _df(2 * k - 8))),
        safe(lambda: F((18 * k ** 3 - 221 * k ** 2 + 953 * k - 1455) * _df(2 * k - 10))),
        safe(lambda: F(2 * k - 11, 2) * (4 * k ** 4 - 60 * k ** 3 + 371 * k ** 2 - 1155 * k + 1530) * _df(2 * k - 12)),
    ]
    return out


# Smallest k at which each printed diagonal table applies.  The class itself
# needs k >= 4; below the subgroup floor the orbit structure changes.
APPENDIX_FLOOR = {"2k-2,2": 4, "2k-4,4": 5, "2k-6,6": 6}


def verify_appendix_diagonals(k: int) -> dict:
    """Compare computed diagonals of [2k-4,2,2] quotients with the printed ones."""
    if k > 6:
        raise ResourceError("appendix audit is guarded at k <= 6")
    lam = (2 * k - 4, 2, 2)
    deg = class_degree(lam, k)
    report = {"k": k, "class": list(lam), "degree": deg, "tables": []}
    for (mu, printed), floor in zip(printed_appendix_diagonals(k).items(), APPENDIX_FLOOR.values()):
        if any(x <= 0 for x in mu) or list(mu) != sorted(mu, reverse=True):
            continue
        q = quotient_matrix(lam, mu, k)
        entries = []
        for i, comp in enumerate(q.diagonal):
            p = printed[i] if i < len(printed) else None
            row = {"cell": i, "computed": comp, "printed": None if p is None else frac_str(p)}
            if p is None:
                row["status"] = "not-applicable"
            elif k < floor:
                row["status"] = "out-of-range"
            elif p == comp:
                row["status"] = "match"
            else:
                row["status"] = "mismatch"
                notes = []
                if p > deg:
                    notes.append("cannot be a diagonal entry (exceeds class degree)")
                if p == q.trace:
                    notes.append("equals the quotient trace")
                row["notes"] = notes
            entries.append(row)
        eig = q.eigen()
        report["tables"].append({
            "subgroup": list(mu),
            "matrix": q.entries,
            "row_sums_ok": all(s == deg for s in q.row_sums),
            "trace": q.trace,
            "eigenvalues": [frac_str(r) for r in eig.values()],
            "diagonal": entries,
        })
    return report
