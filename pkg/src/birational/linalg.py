"""Exact linear algebra over Q / F_p and determinants of polynomial matrices."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .fields import FieldSpec
from .poly import Polynomial


def row_echelon(rows: Sequence[Sequence], field: FieldSpec):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [[field.coerce(x) for x in r] for r in rows]
    P = field.p
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [(x * inv) % P if P else x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [((a - f * b) % P if P else a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], field: FieldSpec) -> int:
    if not rows or not rows[0]:
        return 0
    return len(row_echelon(rows, field)[1])


def nullspace(rows: Sequence[Sequence], field: FieldSpec, ncols: int | None = None) -> list:
    """Basis of ``{v : rows @ v = 0}`` as a list of vectors."""
    if not rows:
        n = ncols or 0
        return [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    n = len(rows[0])
    m, pivots = row_echelon(rows, field)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero] * n
        v[fcol] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(m[i][fcol])
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, field: FieldSpec):
    """One solution of ``rows @ v = rhs`` or ``None``."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(rows[0])
    m, pivots = row_echelon(aug, field)
    if n in pivots:
        return None
    v = [field.zero] * n
    for i, pc in enumerate(pivots):
        v[pc] = m[i][n]
    return v


def det(rows: Sequence[Sequence], field: FieldSpec):
    """Determinant by Gaussian elimination."""
    m = [[field.coerce(x) for x in r] for r in rows]
    n = len(m)
    P = field.p
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = field.neg(d)
        d = d * m[c][c]
        if P:
            d %= P
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [((a - f * b) % P if P else a - f * b) for a, b in zip(m[i], m[c])]
    return d


def matmul(a, b, field: FieldSpec):
    P = field.p
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            s = sum(row[k] * b[k][j] for k in range(len(b)))
            new.append(s % P if P else s)
        out.append(new)
    return out


def inverse(rows, field: FieldSpec):
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)]
           for i, r in enumerate(rows)]
    m, pivots = row_echelon(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in m]


def poly_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square matrix of polynomials by Laplace expansion.

    Minors are memoised by (row range, column set), which makes the
    expansion O(n 2^n) multiplications; fine for the small sizes used here.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> Polynomial:
        if row == n - 1:
            (c,) = cols
            return matrix[row][c]
        total = None
        for sign_idx, c in enumerate(sorted(cols)):
            entry = matrix[row][c]
            if entry.is_zero:
                continue
            term = entry * minor(row + 1, cols - {c})
            if sign_idx % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            return matrix[0][0] * 0
        return total

    return minor(0, frozenset(range(n)))


def poly_submatrix(matrix, drop_row: int, drop_col: int):
    return [[x for j, x in enumerate(r) if j != drop_col]
            for i, r in enumerate(matrix) if i != drop_row]
