"""Gaussian elimination over prime fields (numpy) and over arbitrary F_{p^e}.

Matrices are lists of rows (or 2-d integer arrays for the mod-p routines).
"""
from __future__ import annotations

import numpy as np


def _rref_mod_p(M, p):
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return A.reshape(len(M), -1) if A.ndim != 2 else A, []
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rref_mod_p(M, p):
    """Reduced row echelon form and pivot columns."""
    return _rref_mod_p(M, p)


def rank_mod_p(M, p) -> int:
    if len(M) == 0:
        return 0
    return len(_rref_mod_p(M, p)[1])


def nullspace_mod_p(M, p, ncols=None) -> list[list[int]]:
    """Basis of {v : M v = 0} over F_p."""
    if len(M) == 0:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    A, pivots = _rref_mod_p(M, p)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = int(-A[r, f]) % p
        basis.append(v)
    return basis


def inverse_mod_p(M, p) -> list[list[int]]:
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    A, pivots = _rref_mod_p(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [[int(v) for v in A[i, n:]] for i in range(n)]


def span_contains(basis, vectors, p) -> bool:
    """True iff every vector lies in the F_p-span of basis."""
    r = rank_mod_p(basis, p) if basis else 0
    return rank_mod_p(list(basis) + list(vectors), p) == r


def same_span(U, V, p) -> bool:
    return span_contains(U, V, p) and span_contains(V, U, p)


def rank(M, field) -> int:
    """Rank of a matrix with entries in an arbitrary FiniteField."""
    if field.e == 1:
        return rank_mod_p(M, field.p) if M else 0
    A = [list(r) for r in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r
