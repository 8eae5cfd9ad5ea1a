"""Small exact matrix helpers.

Matrices are lists of lists.  Entries are whatever ring elements the
caller supplies (Fraction, ParamPoly, MPoly); the generic routines only
use + and *.  Inversion and determinants are Fraction-only.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(row) for row in zip(*a)]


def mat_mul(a, b):
    n, k = len(a), len(a[0])
    if len(b) != k:
        raise ValueError("dimension mismatch")
    m = len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scalar_mul(c, a):
    return [[c * x for x in row] for row in a]


def det(a) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    d = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        d *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return sign * d


def inverse(a):
    """Exact inverse of a Fraction matrix; raises on singular input."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def block2x2(a, b, c, d):
    """Assemble [[A, B], [C, D]] from four equal-size square blocks."""
    n = len(a)
    out = []
    for i in range(n):
        out.append(list(a[i]) + list(b[i]))
    for i in range(n):
        out.append(list(c[i]) + list(d[i]))
    return out


def zeros(n: int, m: int | None = None):
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]
