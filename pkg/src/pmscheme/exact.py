"""Exact characteristic polynomials and rational eigenvalues of small matrices."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


def charpoly(A) -> list:
    """Coefficients of det(xI - A), highest degree first (Berkowitz, division-free)."""
    A = [list(row) for row in A]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    vect = [1]
    for r in range(n):
        a = A[r][r]
        R = A[r][:r]
        C = [A[i][r] for i in range(r)]
        t = [1, -a]
        v = C
        for _ in range(r):
            t.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(A[i][j] * v[j] for j in range(r)) for i in range(r)]
        vect = [sum(t[i - j] * vect[j] for j in range(min(i, r) + 1)) for i in range(r + 2)]
    return vect


def poly_eval(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_deflate(coeffs, root):
    """Synthetic division by (x - root); the remainder must be zero."""
    out, acc = [], 0
    for c in coeffs[:-1]:
        acc = acc * root + c
        out.append(acc)
    if acc * root + coeffs[-1] != 0:
        raise ArithmeticError(f"{root} is not a root")
    return out


def _normalise(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _divisors(n: int):
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass
class EigenResult:
    charpoly: list
    roots: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)

    @property
    def complex_roots(self) -> bool:
        return any(abs(complex(z).imag) > 1e-6 for u in self.unresolved for z in u["numeric_roots"])

    def values(self) -> list:
        return sorted(self.roots, reverse=True)


def _poly_divmod(num, den):
    num = list(num)
    out = []
    while len(num) >= len(den):
        f = num[0] / den[0]
        out.append(f)
        for i in range(len(den)):
            num[i] -= f * den[i]
        num.pop(0)
    while num and num[0] == 0:
        num.pop(0)
    return out, num


def _poly_gcd(a, b):
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def _derivative(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _find_rational_root(coeffs, divisor_limit):
    lead = coeffs[0]
    monic = [float(c / lead) for c in coeffs]
    if not all(math.isfinite(c) for c in monic):
        return None
    den_bound = int(abs(lead * math.lcm(*[c.denominator for c in coeffs]))) or 1
    for z in np.roots(monic):
        if abs(z.imag) > 1e-3 * max(1.0, abs(z.real)):
            continue
        r = round(z.real)
        cands = (Fraction(float(z.real)).limit_denominator(den_bound), Fraction(r), Fraction(r + 1), Fraction(r - 1))
        for cand in cands:
            if poly_eval(coeffs, cand) == 0:
                return cand
    c0 = coeffs[-1] * math.lcm(*[c.denominator for c in coeffs])
    if c0.denominator == 1 and 0 < abs(c0) <= divisor_limit:
        for d in _divisors(int(c0)):
            for cand in (Fraction(d), Fraction(-d)):
                if poly_eval(coeffs, cand) == 0:
                    return cand
    return None


def rational_roots(coeffs, divisor_limit: int = 10**6) -> EigenResult:
    """Split off every rational root (with multiplicity) of a polynomial.

    Roots are searched on the square-free part, where they are simple and
    numerically well separated: candidates come from rounding numeric roots,
    then from a divisor search when the constant term is small.  Each
    candidate is confirmed by exact evaluation and deflated from the full
    polynomial as often as it divides it.  What remains is reported
    unresolved.
    """
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    result = EigenResult([_normalise(c) for c in coeffs])
    while len(coeffs) > 1 and coeffs[-1] == 0:
        result.roots.append(0)
        coeffs = coeffs[:-1]
    while len(coeffs) > 1:
        g = _poly_gcd(coeffs, _derivative(coeffs))
        squarefree = _poly_divmod(coeffs, g)[0] if len(g) > 1 else coeffs
        found = _find_rational_root(squarefree, divisor_limit)
        if found is None:
            break
        while len(coeffs) > 1 and poly_eval(coeffs, found) == 0:
            result.roots.append(_normalise(found))
            coeffs = poly_deflate(coeffs, found)
    if len(coeffs) > 1:
        monic = [_normalise(c / coeffs[0]) for c in coeffs]
        result.unresolved.append({
            "poly": monic,
            "numeric_roots": [complex(z) for z in np.roots([float(c) for c in monic])],
        })
    return result


def exact_eigenvalues(M) -> EigenResult:
    rows = [list(r) for r in M]
    if not all(isinstance(x, int) for r in rows for x in r):
        rows = [[Fraction(x) for x in r] for r in rows]
    return rational_roots(charpoly(rows))


def solve_exact(A, b) -> list:
    """Gauss-Jordan elimination over the rationals; raises on a singular system."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)
