"""Small exact linear algebra over Q (matrices are sequences of rows)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(a: Matrix) -> list[list]:
    return [list(col) for col in zip(*a)]


def _bareiss(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(rows)
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(a: Matrix) -> Fraction:
    """Exact determinant; rows are scaled to integers and fed to Bareiss elimination."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    scale = 1
    rows = []
    for row in a:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row))
        scale *= d
        rows.append([int(x * d) for x in row])
    return Fraction(_bareiss(rows), scale)


def rank(a: Matrix) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return 0
    rk, ncols = 0, len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][col] != 0:
                factor = m[i][col] / m[rk][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[rk])]
        rk += 1
        if rk == len(m):
            break
    return rk


def inverse(a: Matrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse; raises ZeroDivisionError when a is singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[col])]
    return [row[n:] for row in m]


def adjugate(a: Matrix) -> list[list[Fraction]]:
    """adj(a) = det(a) * a^{-1}, falling back to cofactors when a is singular."""
    d = det(a)
    if d != 0:
        return [[d * x for x in row] for row in inverse(a)]
    n = len(a)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(map(list, a)) if k != i]
            out[j][i] = (-1) ** (i + j) * det(minor)
    return out


def charpoly(a: Matrix) -> list[Fraction]:
    """Coefficients of det(X I - a), lowest degree first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = matmul(a, m)
        m = [[am[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        coeffs[n - k] = -Fraction(sum(am[i][i] for i in range(n))) / k
    return coeffs
