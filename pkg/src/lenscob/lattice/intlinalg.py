"""Small exact integer linear algebra: determinants, ranks, saturated kernels."""

from __future__ import annotations


def det(M) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M) -> int:
    A = [list(row) for row in M]
    if not A:
        return 0
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            if A[i][c]:
                f, g = A[i][c], A[r][c]
                A[i] = [g * x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def gram(vectors) -> list[list[int]]:
    """Euclidean Gram matrix ``sum_k v_k w_k``."""
    return [[sum(a * b for a, b in zip(v, w)) for w in vectors] for v in vectors]


def kernel_basis(rows, ncols: int) -> list[tuple[int, ...]]:
    """Saturated basis of ``{x in Z^ncols : r . x = 0 for every row r}``.

    Row-reduces ``[A^T | I]`` with unimodular integer row operations; the
    identity part of the rows whose ``A^T`` part vanishes spans the kernel,
    and it is primitive because the accumulated transform is unimodular.
    """
    m = len(rows)
    T = [[rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(ncols)]
         for j in range(ncols)]
    prow = 0
    for c in range(m):
        while True:
            nz = [i for i in range(prow, ncols) if T[i][c]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(T[i][c]))
            T[prow], T[best] = T[best], T[prow]
            done = True
            for i in range(prow + 1, ncols):
                if T[i][c]:
                    f = T[i][c] // T[prow][c]
                    T[i] = [x - f * y for x, y in zip(T[i], T[prow])]
                    if T[i][c]:
                        done = False
            if done:
                prow += 1
                break
        if prow == ncols:
            break
    return [tuple(T[i][m:]) for i in range(prow, ncols)]
