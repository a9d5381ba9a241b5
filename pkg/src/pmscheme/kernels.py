"""Compiled pair-scan kernels over partner arrays.

Every kernel works on the (N, 2k) int8 partner array from
:func:`pmscheme.matchings.partner_array` and returns the class index of a
pair (position of its union shape in ``even_partitions(2k)``).
"""
from __future__ import annotations

from functools import lru_cache

import numba
import numpy as np

from .partitions import even_partitions


@lru_cache(maxsize=None)
def shape_lookup(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Mixed-radix encoding of cycle-count vectors and the key -> class table.

    A union shape with n_m cycles of length 2m gets key sum_m n_m * stride[m],
    where stride uses radix (k // m + 1).
    """
    stride = np.zeros(k + 1, dtype=np.int64)
    s = 1
    for m in range(1, k + 1):
        stride[m] = s
        s *= k // m + 1
    lut = np.full(s, -1, dtype=np.int8)
    for idx, lam in enumerate(even_partitions(2 * k)):
        key = sum(int(stride[x // 2]) for x in lam)
        lut[key] = idx
    return stride, lut


@numba.njit(cache=True)
def _pair_class(p, q, stride, lut, seen):
    n = p.shape[0]
    for v in range(n):
        seen[v] = False
    key = 0
    for v in range(n):
        if seen[v]:
            continue
        half = 0
        u = v
        while True:
            w = p[u]
            seen[u] = True
            seen[w] = True
            half += 1
            u = q[w]
            if u == v:
                break
        key += stride[half]
    return lut[key]


@numba.njit(cache=True)
def _label_block(partners, rows, cols, stride, lut):
    out = np.empty((rows.shape[0], cols.shape[0]), dtype=np.int8)
    seen = np.zeros(partners.shape[1], dtype=np.bool_)
    for a in range(rows.shape[0]):
        p = partners[rows[a]]
        for b in range(cols.shape[0]):
            out[a, b] = _pair_class(p, partners[cols[b]], stride, lut, seen)
    return out


@numba.njit(cache=True)
def _count_block(partners, rows, cols, stride, lut, ncls):
    out = np.zeros((rows.shape[0], ncls), dtype=np.int64)
    seen = np.zeros(partners.shape[1], dtype=np.bool_)
    for a in range(rows.shape[0]):
        p = partners[rows[a]]
        for b in range(cols.shape[0]):
            out[a, _pair_class(p, partners[cols[b]], stride, lut, seen)] += 1
    return out


@numba.njit(cache=True)
def _weighted_matvec(labels, weights, x):
    n = labels.shape[0]
    y = np.zeros(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        row = labels[i]
        for j in range(labels.shape[1]):
            acc += weights[row[j]] * x[j]
        y[i] = acc
    return y


@numba.njit(cache=True)
def _implicit_matvec(partners, stride, lut, weights, x):
    n = partners.shape[0]
    y = np.zeros(n, dtype=np.float64)
    seen = np.zeros(partners.shape[1], dtype=np.bool_)
    for i in range(n):
        acc = 0.0
        for j in range(n):
            w = weights[_pair_class(partners[i], partners[j], stride, lut, seen)]
            if w != 0.0:
                acc += w * x[j]
        y[i] = acc
    return y


def _idx(a, n):
    if a is None:
        return np.arange(n, dtype=np.int64)
    return np.asarray(a, dtype=np.int64)


def class_labels(partners: np.ndarray, rows=None, cols=None) -> np.ndarray:
    """int8 matrix of class indices for the (rows x cols) block of pairs."""
    k = partners.shape[1] // 2
    stride, lut = shape_lookup(k)
    n = partners.shape[0]
    return _label_block(partners, _idx(rows, n), _idx(cols, n), stride, lut)


def class_counts(partners: np.ndarray, rows=None, cols=None) -> np.ndarray:
    """For each row, how many of the given columns lie in each class."""
    k = partners.shape[1] // 2
    stride, lut = shape_lookup(k)
    n = partners.shape[0]
    ncls = len(even_partitions(2 * k))
    return _count_block(partners, _idx(rows, n), _idx(cols, n), stride, lut, ncls)


def weighted_matvec(labels: np.ndarray, weights: np.ndarray, x: np.ndarray) -> np.ndarray:
    return _weighted_matvec(labels, np.asarray(weights, dtype=np.float64), np.asarray(x, dtype=np.float64))


def implicit_matvec(partners: np.ndarray, weights: np.ndarray, x: np.ndarray) -> np.ndarray:
    k = partners.shape[1] // 2
    stride, lut = shape_lookup(k)
    return _implicit_matvec(partners, stride, lut, np.asarray(weights, dtype=np.float64),
                            np.asarray(x, dtype=np.float64))
