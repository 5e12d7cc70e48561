"""Exact Gaussian elimination over any field whose elements support + - * /.

Used with ``Fraction`` and ``Cyclotomic`` entries. Pivots are the first
nonzero entry scanning columns left to right, so results are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list[list[Any]]


def _is_zero(x) -> bool:
    return x == 0


def rref(A: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    M = [list(row) for row in A]
    pivots: list[int] = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if not _is_zero(M[i][c])), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c] if not isinstance(M[r][c], int) else Fraction(1, M[r][c])
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and not _is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(A: Sequence[Sequence[Any]]) -> int:
    return len(rref(A)[1]) if A else 0


def kernel(A: Sequence[Sequence[Any]], ncols: int, one=Fraction(1), zero=Fraction(0)) -> list[list[Any]]:
    """Basis of the right kernel, one vector per free column (in column order)."""
    if not A:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(A)
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [zero] * ncols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = zero - R[i][f]
        out.append(v)
    return out


def solve(A: Sequence[Sequence[Any]], b: Sequence[Any]) -> list[Any]:
    """Unique solution of a square nonsingular system."""
    n = len(A)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [R[i][n] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    inner = len(B)
    return [[sum((A[i][k] * B[k][j] for k in range(1, inner)), A[i][0] * B[0][j])
             for j in range(len(B[0]))] for i in range(len(A))]


def matvec(A: Matrix, v: Sequence[Any]) -> list[Any]:
    return [sum((row[k] * v[k] for k in range(1, len(v))), row[0] * v[0]) for row in A]


def conj(x):
    return x.conjugate() if hasattr(x, "conjugate") and not isinstance(x, (int, Fraction)) else x


def conj_transpose(A: Matrix) -> Matrix:
    return [[conj(A[i][j]) for i in range(len(A))] for j in range(len(A[0]))]


def inverse(A: Matrix, one, zero) -> Matrix:
    n = len(A)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve_in_span(basis: Sequence[Sequence[Any]], v: Sequence[Any]) -> list[Any] | None:
    """Coordinates of ``v`` in the span of the (independent) ``basis`` vectors, or None."""
    k = len(basis)
    n = len(v)
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    R, pivots = rref(aug)
    if k in pivots:
        return None
    coords = [None] * k
    for i, pc in enumerate(pivots):
        coords[pc] = R[i][k]
    return coords
