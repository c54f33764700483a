"""Dense elimination routines shared by the float and exact-rational paths.

Matrices are either float ``ndarray`` or nested lists of :class:`Fraction`.
Exact inputs are detected by element type, so the same call works in both modes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def to_exact(M) -> list[list[Fraction]]:
    """Convert a real matrix to Fractions without rounding (floats are binary rationals)."""
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in M]


def to_exact_vector(v) -> list[Fraction]:
    return [x if isinstance(x, Fraction) else Fraction(x) for x in v]


def is_exact(M) -> bool:
    if isinstance(M, np.ndarray):
        return M.dtype == object and M.size > 0 and isinstance(M.flat[0], Fraction)
    for row in M:
        for x in row:
            return isinstance(x, Fraction)
    return False


def _square_shape(M) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant requires a square matrix")
    return n


def determinant(M) -> float | Fraction:
    """Determinant by row elimination with partial pivoting.

    Exact (Fraction) input gives an exact result; the 0x0 determinant is 1.
    """
    if isinstance(M, np.ndarray) and M.dtype != object:
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("determinant requires a square matrix")
        if M.shape[0] == 0:
            return 1.0
        return float(np.linalg.det(M))
    n = _square_shape(M)
    if n == 0:
        return Fraction(1)
    if not is_exact(M):
        return determinant(np.asarray(M, dtype=float))
    a = [list(row) for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f /= p
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, n):
                    row_r[c] -= f * row_c[c]
    return det


def rref(M, tol: float = 1e-10):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``.

    Float pivots below ``tol * max(||M||_inf, 1) * n`` count as zero; exact input
    uses exact zero tests and ignores ``tol``.
    """
    exact = is_exact(M)
    if exact:
        a = [list(row) for row in M]
        rows = len(a)
        cols = len(a[0]) if rows else 0
        thresh = 0
    else:
        a = np.array(M, dtype=float)
        rows, cols = a.shape
        norm = np.abs(a).sum(axis=1).max() if a.size else 0.0
        thresh = tol * max(norm, 1.0) * max(rows, cols, 1)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        if exact:
            piv = next((k for k in range(r, rows) if a[k][c] != 0), None)
        else:
            k = r + int(np.argmax(np.abs(a[r:, c])))
            piv = k if abs(a[k, c]) > thresh else None
        if piv is None:
            continue
        if exact:
            a[r], a[piv] = a[piv], a[r]
            p = a[r][c]
            a[r] = [x / p for x in a[r]]
            for k in range(rows):
                if k != r and a[k][c] != 0:
                    f = a[k][c]
                    a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        else:
            a[[r, piv]] = a[[piv, r]]
            a[r] /= a[r, c]
            others = np.arange(rows) != r
            a[others] -= np.outer(a[others, c], a[r])
            a[others, c] = 0.0
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M, tol: float = 1e-10) -> int:
    return len(rref(M, tol)[1])


def nullspace_oracle(M, tol: float = 1e-10) -> list:
    """Null-space basis from the reduced row echelon form (one vector per free column).

    Vectors are not orthonormalized; each has a 1 in its free column.
    """
    exact = is_exact(M)
    R, pivots = rref(M, tol)
    n = len(M[0]) if len(M) else 0
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        if exact:
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for row, pc in enumerate(pivots):
                v[pc] = -R[row][f]
        else:
            v = np.zeros(n)
            v[f] = 1.0
            for row, pc in enumerate(pivots):
                v[pc] = -R[row, f]
        basis.append(v)
    return basis


def in_span(v, basis: Sequence, tol: float = 1e-8) -> bool:
    """Whether ``v`` lies in the span of ``basis`` (relative least-squares residual)."""
    v = np.asarray(v, dtype=float)
    if not basis:
        return bool(np.all(v == 0))
    B = np.column_stack([np.asarray(b, dtype=float) for b in basis])
    coef, *_ = np.linalg.lstsq(B, v, rcond=None)
    resid = np.linalg.norm(B @ coef - v)
    return bool(resid <= tol * max(np.linalg.norm(v), 1e-300))


def matvec(M, v):
    """Product that stays exact for Fraction input."""
    if is_exact(M) or (len(v) and isinstance(v[0], Fraction)):
        return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]
    return np.asarray(M, dtype=float) @ np.asarray(v, dtype=float)
