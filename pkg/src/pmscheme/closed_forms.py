"""Printed closed-form entries of the character table (5 x 5 grid).

Rows are modules, columns are classes, both drawn from
[2k], [2k-2,2], [2k-4,4], [2k-4,2,2], [2k-6,6].  Every cell has a validity
floor in k below which it is not evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from typing import Callable

from .partitions import double_factorial as df

SHAPES = ("2k", "2k-2,2", "2k-4,4", "2k-4,2,2", "2k-6,6")


def shape_at(name: str, k: int) -> tuple | None:
    parts = {
        "2k": (2 * k,),
        "2k-2,2": (2 * k - 2, 2),
        "2k-4,4": (2 * k - 4, 4),
        "2k-4,2,2": (2 * k - 4, 2, 2),
        "2k-6,6": (2 * k - 6, 6),
    }[name]
    if any(x <= 0 for x in parts) or list(parts) != sorted(parts, reverse=True):
        return None
    return parts


# Smallest k at which the shape's first part is strictly larger than the rest.
# Repeated or merged parts change the symmetry count and break the printed
# forms, so cells below the floor are never evaluated.
FLOOR = {"2k": 1, "2k-2,2": 3, "2k-4,4": 5, "2k-4,2,2": 4, "2k-6,6": 7}


@dataclass(frozen=True)
class ClosedForm:
    module: str
    cls: str
    fn: Callable
    text: str
    source: str

    def floor(self) -> int:
        return max(FLOOR[self.module], FLOOR[self.cls])

    def evaluate(self, k: int):
        """Exact value, or None when k is below the floor or the arithmetic degenerates."""
        if k < self.floor():
            return None
        try:
            return F(self.fn(k))
        except (ValueError, ZeroDivisionError):
            return None


def _cells():
    T5, T1 = "Table 5", "Table 1/5"
    rows = {
        "2k": [
            (lambda k: F(df(2 * k), 2 * k), "(2k)!!/2k", T5),
            (lambda k: F(df(2 * k), 2 * (2 * k - 2)), "(2k)!!/(2(2k-2))", T5),
            (lambda k: F(df(2 * k), 4 * (2 * k - 4)), "(2k)!!/(4(2k-4))", T5),
            (lambda k: F(df(2 * k), 8 * (2 * k - 4)), "(2k)!!/(8(2k-4))", T1),
            (lambda k: F(df(2 * k), 6 * (2 * k - 6)), "(2k)!!/(6(2k-6))", T5),
        ],
        "2k-2,2": [
            (lambda k: -df(2 * k - 4), "-(2k-4)!!", T5),
            (lambda k: F(df(2 * k - 4), 2), "(2k-4)!!/2", T5),
            (lambda k: F(-2 * k * df(2 * k - 6), 4), "-2k(2k-6)!!/4", T5),
            (lambda k: F((3 * k - 2) * df(2 * k - 6), 4), "(3k-2)(2k-6)!!/4", T1),
            (lambda k: F(-2 * k * df(2 * k - 4), 6 * (2 * k - 6)), "-2k(2k-4)!!/(6(2k-6))", T5),
        ],
        "2k-4,4": [
            (lambda k: -df(2 * k - 6), "-(2k-6)!!", T5),
            (lambda k: -(5 * k - 12) * df(2 * k - 8), "-(5k-12)(2k-8)!!", T5),
            (lambda k: F((7 * k - 15) * df(2 * k - 8), 2), "(7k-15)(2k-8)!!/2", T5),
            (lambda k: F(-(k + 3) * df(2 * k - 8), 4), "-(k+3)(2k-8)!!/4", T1),
            (lambda k: F(-2 * k * df(2 * k - 6), 6 * (2 * k - 6)), "-2k(2k-6)!!/(6(2k-6))", T5),
        ],
        "2k-4,2,2": [
            (lambda k: 2 * df(2 * k - 6), "2(2k-6)!!", T5),
            (lambda k: -df(2 * k - 6), "-(2k-6)!!", T5),
            (lambda k: F(-df(2 * k - 6), 2), "-(2k-6)!!/2", T5),
            (lambda k: (k * k - 7 * k + 12) * df(2 * k - 10), "(k^2-7k+12)(2k-10)!!", T1),
            (lambda k: F(4 * k * df(2 * k - 6), 6 * (2 * k - 6)), "4k(2k-6)!!/(6(2k-6))", T5),
        ],
        "2k-6,6": [
            (lambda k: -3 * df(2 * k - 8), "-3(2k-8)!!", T5),
            (lambda k: -3 * (3 * k - 10) * df(2 * k - 10), "-3(3k-10)(2k-10)!!", T5),
            (lambda k: -3 * (9 * k * k - 71 * k + 140) * df(2 * k - 12), "-3(9k^2-71k+140)(2k-12)!!", T5),
            (lambda k: F(-3, 2) * (13 * k * k - 101 * k + 190) * df(2 * k - 12), "-3/2(13k^2-101k+190)(2k-12)!!", T1),
            (lambda k: 6 * (5 * k * k - 38 * k + 70) * df(2 * k - 12), "6(5k^2-38k+70)(2k-12)!!", T5),
        ],
    }
    out = {}
    for mod, cells in rows.items():
        for cls, (fn, text, src) in zip(SHAPES, cells):
            out[(mod, cls)] = ClosedForm(mod, cls, fn, text, src)
    return out


CLOSED_FORMS = _cells()


def closed_form_entry(module, cls, k: int):
    """Printed value at k for (module, class) given as shape names or partitions.

    Returns an exact Fraction, or the string "unknown" when the cell is not
    in the printed grid or is outside its validity range.
    """
    module = _name(module, k)
    cls = _name(cls, k)
    if module is None or cls is None:
        return "unknown"
    value = CLOSED_FORMS[(module, cls)].evaluate(k)
    return "unknown" if value is None else value


def _name(x, k: int):
    if isinstance(x, str):
        return x if x in SHAPES else None
    x = tuple(x)
    for name in SHAPES:
        if shape_at(name, k) == x:
            return name
    return None


def degree_pattern_values(k: int, i: int) -> list:
    """Conjectured eigenvalues of class [2k] on [2k-2i,2i] and [2k-2i,2,...,2].

    Returns (pattern, module, value) triples; at i=1 both patterns name [2k-2,2].
    """
    out = []
    if 2 * k - 2 * i >= 2 * i:
        out.append(("two-row", (2 * k - 2 * i, 2 * i), -df(2 * i - 3) * df(2 * k - 2 * i - 2)))
    if 2 * k - 2 * i >= 2:
        out.append(("hook-of-twos", (2 * k - 2 * i,) + (2,) * i, (-1) ** i * _fact(i) * df(2 * k - 2 * i - 2)))
    return out


def _fact(n: int) -> int:
    out = 1
    for j in range(2, n + 1):
        out *= j
    return out
