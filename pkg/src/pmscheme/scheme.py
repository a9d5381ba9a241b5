"""The perfect matching association scheme: classes, degrees, N_t(2k)."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .matchings import (
    Matching,
    MatchingFamily,
    ResourceError,
    _check_t,
    count_matchings,
    partner_array,
    rank,
    union_shape,
)
from .partitions import as_partition, even_partitions, has_subpartition_sum, is_even_partition

MAX_DENSE_K = 6


class VerificationError(AssertionError):
    pass


def class_index(lam, k: int) -> int:
    try:
        return even_partitions(2 * k).index(tuple(lam))
    except ValueError:
        raise ValueError(f"{list(lam)} is not an even partition of {2 * k}") from None


def class_degree(lam, k: int) -> int:
    """Number of matchings whose union with a fixed matching has shape lam."""
    lam = as_partition(lam)
    if not is_even_partition(lam) or sum(lam) != 2 * k:
        raise ValueError(f"{list(lam)} is not an even partition of {2 * k}")
    sizes = [x // 2 for x in lam]
    groupings = math.factorial(k)
    for m in sizes:
        groupings //= math.factorial(m)
    for rep in Counter(sizes).values():
        groupings //= math.factorial(rep)
    cycles = math.prod(2 ** (m - 1) * math.factorial(m - 1) for m in sizes)
    return groupings * cycles


@lru_cache(maxsize=1)
def dense_labels(k: int) -> np.ndarray:
    """N x N int8 matrix of class indices (one byte per pair)."""
    if k > MAX_DENSE_K:
        raise ResourceError(f"dense class matrices are guarded at k <= {MAX_DENSE_K}")
    labels = kernels.class_labels(partner_array(k))
    labels.setflags(write=False)
    return labels


@dataclass
class ClassMatrix:
    k: int
    class_label: tuple
    dense: np.ndarray | None = None

    @property
    def index(self) -> int:
        return class_index(self.class_label, self.k)

    @property
    def degree(self) -> int:
        return class_degree(self.class_label, self.k)

    def adjacent(self, P: Matching, Q: Matching) -> bool:
        return union_shape(P, Q) == self.class_label

    def row(self, i: int) -> np.ndarray:
        if self.dense is not None:
            return self.dense[i]
        labels = kernels.class_labels(partner_array(self.k), rows=[i])[0]
        return (labels == self.index).astype(np.uint8)


def build_class_matrix(lam, k: int, mode: str = "dense") -> ClassMatrix:
    lam = as_partition(lam)
    class_index(lam, k)
    if mode == "dense":
        return ClassMatrix(k, lam, (dense_labels(k) == class_index(lam, k)).astype(np.uint8))
    if mode == "implicit":
        return ClassMatrix(k, lam, None)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class AxiomReport:
    k: int
    n_classes: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"k": self.k, "classes": self.n_classes, "checks": self.checks,
                "failures": self.failures, "passed": self.passed}


def check_axioms(labels: np.ndarray, k: int, commutativity: bool = True) -> AxiomReport:
    classes = even_partitions(2 * k)
    report = AxiomReport(k, len(classes))
    n = labels.shape[0]

    bad = np.argwhere((labels < 0) | (labels >= len(classes)))
    report.checks["sum_to_J"] = not len(bad)
    if len(bad):
        report.failures.append({"axiom": "sum_to_J", "witness": bad[0].tolist()})

    ident = classes.index(tuple([2] * k))
    diag_ok = np.array_equal(np.diag(labels), np.full(n, ident))
    off = labels == ident
    np.fill_diagonal(off, False)
    report.checks["identity_class"] = bool(diag_ok and not off.any())
    if not report.checks["identity_class"]:
        w = np.argwhere(off)[0].tolist() if off.any() else [int(np.argmax(np.diag(labels) != ident))] * 2
        report.failures.append({"axiom": "identity_class", "witness": w})

    asym = np.argwhere(labels != labels.T)
    report.checks["symmetric"] = not len(asym)
    if len(asym):
        report.failures.append({"axiom": "symmetric", "witness": asym[0].tolist()})

    if commutativity:
        mats = [(labels == c).astype(np.int64) for c in range(len(classes))]
        ok = True
        for a in range(len(classes)):
            for b in range(a + 1, len(classes)):
                diff = np.argwhere(mats[a] @ mats[b] != mats[b] @ mats[a])
                if len(diff):
                    ok = False
                    report.failures.append({"axiom": "commutative",
                                            "classes": [list(classes[a]), list(classes[b])],
                                            "witness": diff[0].tolist()})
        report.checks["commutative"] = ok
    return report


def verify_scheme_axioms(k: int, strict: bool = False) -> AxiomReport:
    report = check_axioms(dense_labels(k), k, commutativity=k <= 4)
    if strict and not report.passed:
        raise VerificationError(f"scheme axiom failed: {report.failures[0]}")
    return report


@dataclass
class IntersectionGraph:
    """N_t(2k): matchings adjacent when their shape has no parts summing to 2t."""
    k: int
    t: int
    class_list: tuple

    @property
    def n_vertices(self) -> int:
        return count_matchings(self.k)

    @property
    def degree(self) -> int:
        return sum(class_degree(lam, self.k) for lam in self.class_list)

    @property
    def class_mask(self) -> np.ndarray:
        classes = even_partitions(2 * self.k)
        return np.array([lam in self.class_list for lam in classes])

    def adjacent(self, P: Matching, Q: Matching) -> bool:
        return not has_subpartition_sum(union_shape(P, Q), 2 * self.t)

    def adjacency_dense(self) -> np.ndarray:
        return self.class_mask[dense_labels(self.k)]

    def adjacency_block(self, rows, cols) -> np.ndarray:
        return self.class_mask[kernels.class_labels(partner_array(self.k), rows, cols)]


def intersection_classes(k: int, t: int) -> tuple:
    return tuple(lam for lam in even_partitions(2 * k) if not has_subpartition_sum(lam, 2 * t))


def build_intersection_graph(k: int, t: int) -> IntersectionGraph:
    _check_t(k, t)
    return IntersectionGraph(k, t, intersection_classes(k, t))


def is_coclique(family: MatchingFamily, graph: IntersectionGraph) -> bool:
    if family.k != graph.k:
        raise ValueError("family and graph are on different k")
    idx = [rank(m, graph.k) for m in family]
    if len(idx) < 2:
        return True
    return not graph.adjacency_block(idx, idx).any()
