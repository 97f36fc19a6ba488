"""Exact integer linear algebra: determinants, solves, rank.

Two independent elimination routines are kept on purpose so unimodularity
claims can be cross-checked: Bareiss fraction-free elimination over the
integers and plain Gaussian elimination over exact rationals.
"""

from __future__ import annotations

from fractions import Fraction


def det_bareiss(matrix) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_gauss_fraction(matrix) -> int:
    """Determinant via rational Gaussian elimination; the independent check."""
    a = [[Fraction(int(x)) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] * inv
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    if det.denominator != 1:
        raise ArithmeticError("non-integral determinant of an integer matrix")
    return int(det)


def solve_unimodular(matrix, rhs) -> list[int]:
    """Solve M x = rhs exactly for an integer matrix with |det M| = 1.

    Uses Cramer's rule with Bareiss determinants; the solution is verified by
    back-multiplication before being returned.
    """
    n = len(matrix)
    d = det_bareiss(matrix)
    if d not in (1, -1):
        raise ArithmeticError(f"matrix is not unimodular (det = {d})")
    rhs = [int(x) for x in rhs]
    if len(rhs) != n:
        raise ValueError("right-hand side has wrong length")
    xs = []
    for col in range(n):
        replaced = [
            [rhs[i] if j == col else matrix[i][j] for j in range(n)]
            for i in range(n)
        ]
        xs.append(det_bareiss(replaced) // d)
    for i in range(n):
        if sum(matrix[i][j] * xs[j] for j in range(n)) != rhs[i]:
            raise ArithmeticError("exact solve verification failed")
    return xs


def rank_rational(matrix) -> int:
    """Rank over the rationals by exact elimination."""
    a = [[Fraction(int(x)) for x in row] for row in matrix]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    for col in range(cols):
        pivot_row = next((i for i in range(rank, rows) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        inv = 1 / a[rank][col]
        for i in range(rank + 1, rows):
            factor = a[i][col] * inv
            if factor:
                for j in range(col, cols):
                    a[i][j] -= factor * a[rank][j]
        rank += 1
        if rank == rows:
            break
    return rank
