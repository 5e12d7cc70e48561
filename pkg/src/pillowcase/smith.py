"""Integer Smith normal form with unimodular transforms.

Matrices are plain lists of lists of Python ints; everything is exact.
"""

from __future__ import annotations

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, src, dst, q):
    # row_dst += q * row_src
    if q:
        rs, rd = M[src], M[dst]
        for k in range(len(rd)):
            rd[k] += q * rs[k]


def _add_col(M, src, dst, q):
    if q:
        for row in M:
            row[dst] += q * row[src]


def smith_normal_form(A: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ A @ V == D``.

    ``D`` is diagonal with non-negative entries ``d_1 | d_2 | ...``; ``U`` and
    ``V`` are unimodular. ``ncols`` is only needed when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        _swap_rows(D, t, i)
        _swap_rows(U, t, i)
        _swap_cols(D, t, j)
        _swap_cols(V, t, j)

        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = -(D[i][t] // p)
                    _add_row(D, t, i, q)
                    _add_row(U, t, i, q)
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    q = -(D[t][j] // p)
                    _add_col(D, t, j, q)
                    _add_col(V, t, j, q)
                    dirty = dirty or D[t][j] != 0
            if dirty:
                # move the smallest leftover in row/column t into the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                if i != t:
                    _swap_rows(D, t, i)
                    _swap_rows(U, t, i)
                else:
                    _swap_cols(D, t, j)
                    _swap_cols(V, t, j)
                continue
            # divisibility: pull an offending row into row t and redo
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(D, bad, t, 1)
            _add_row(U, bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def rank_of_diagonal(D: Matrix) -> int:
    r = 0
    while r < min(len(D), len(D[0]) if D else 0) and D[r][r] != 0:
        r += 1
    return r


def integer_kernel(A: Matrix, ncols: int) -> Matrix:
    """Basis of ``{x in Z^n : A x = 0}`` as a list of column vectors."""
    D, _, V = smith_normal_form(A, ncols)
    r = rank_of_diagonal(D) if A else 0
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def solve_integer(A: Matrix, b: list[int], ncols: int) -> list[int] | None:
    """One integer solution of ``A x = b`` or ``None`` if there is none."""
    D, U, V = smith_normal_form(A, ncols)
    m = len(A)
    Ub = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    r = rank_of_diagonal(D) if A else 0
    y = [0] * ncols
    for i in range(r):
        if Ub[i] % D[i][i]:
            return None
        y[i] = Ub[i] // D[i][i]
    if any(Ub[i] for i in range(r, m)):
        return None
    return [sum(V[i][k] * y[k] for k in range(ncols)) for i in range(ncols)]
