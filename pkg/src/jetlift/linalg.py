"""Exact linear algebra over Q (dense, Fraction entries).

Small matrices only; everything the engine solves is desk scale.  The particular
solution returned by `solve` is canonical: reduced row echelon form with leftmost
pivots and all free variables set to zero, which makes downstream output
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]

__all__ = ["rref", "rank", "solve", "solve_with_residual", "nullspace"]


def _copy(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(row) for row in matrix]


def rref(matrix: Sequence[Sequence[Fraction]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot column indices."""
    a = _copy(matrix)
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(row, n_rows):
            if a[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        a[row], a[pivot_row] = a[pivot_row], a[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [v * inv for v in a[row]]
        for r in range(n_rows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == n_rows:
            break
    return a, pivots


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(matrix)[1])


def solve(matrix: Sequence[Sequence[Fraction]],
          rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One exact solution of A x = b (free variables zero), or None if inconsistent."""
    if not matrix:
        return [] if not any(rhs) else None
    n_cols = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(augmented)
    for piv in pivots:
        if piv == n_cols:
            return None  # pivot in the constant column: inconsistent
    x = [Fraction(0)] * n_cols
    for i, piv in enumerate(pivots):
        x[piv] = reduced[i][n_cols]
    return x


def solve_with_residual(matrix: Sequence[Sequence[Fraction]],
                        rhs: Sequence[Fraction]):
    """Canonical attempt at A x = b: returns (x, residual, rank).

    Pivots are restricted to the coefficient columns, free variables are zero, and
    the residual b - A x (in the original coordinates) is zero exactly when the
    system is consistent; otherwise it is a deterministic representative of the
    class of b modulo the column space.
    """
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    n_cols = len(matrix[0]) if matrix else 0
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(row, len(rows)):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[row], rows[pivot_row] = rows[pivot_row], rows[row]
        inv = Fraction(1) / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for r in range(len(rows)):
            if r != row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[row])]
        pivots.append(col)
        row += 1
        if row == len(rows):
            break
    x = [Fraction(0)] * n_cols
    for i, piv in enumerate(pivots):
        x[piv] = rows[i][n_cols]
    residual = [b - sum((c * xv for c, xv in zip(r, x)), Fraction(0))
                for r, b in zip(matrix, rhs)]
    return x, residual, len(pivots)


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Basis of the right null space (one vector per free column)."""
    if not matrix:
        return []
    n_cols = len(matrix[0])
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for i, piv in enumerate(pivots):
            v[piv] = -reduced[i][free]
        basis.append(v)
    return basis
