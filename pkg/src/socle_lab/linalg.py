"""Dense linear algebra over F_p on numpy integer arrays."""

from __future__ import annotations

import numpy as np


def as_mod(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A % p


def rref(M, p: int, track: bool = False):
    """Reduced row echelon form mod p.

    Returns ``(R, pivots)`` or, with ``track``, ``(R, pivots, T)`` where
    ``T @ M == R`` mod p.
    """
    A = as_mod(M, p).copy()
    rows, cols = A.shape
    T = np.eye(rows, dtype=np.int64) if track else None
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
            if track:
                T[[r, piv]] = T[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        if track:
            T[r] = (T[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
            if track:
                T[mask] = (T[mask] - np.outer(col[mask], T[r])) % p
        pivots.append(c)
        r += 1
    return (A, pivots, T) if track else (A, pivots)


def rank_mod_p(M, p: int) -> int:
    A = as_mod(M, p)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace_mod_p(M, p: int) -> np.ndarray:
    """Basis of the right kernel, one vector per row."""
    A = as_mod(M, p)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-R[i, f]) % p
    return basis


def left_kernel_mod_p(M, p: int) -> np.ndarray:
    return nullspace_mod_p(as_mod(M, p).T, p)


def solve_mod_p(A, b, p: int):
    """Solve ``A x = b`` mod p.

    Returns ``(x, None)`` with one particular solution, or ``(None, y)`` with
    ``y A == 0`` and ``y b != 0`` certifying inconsistency.
    """
    A = as_mod(A, p)
    b = np.array(b, dtype=np.int64).reshape(-1) % p
    rows, cols = A.shape
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots, T = rref(aug, p, track=True)
    if cols in pivots:
        i = pivots.index(cols)
        return None, T[i] % p
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return x, None


def span_basis(vectors, p: int) -> np.ndarray:
    """Echelon basis of the row span."""
    A = as_mod(vectors, p)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    R, pivots = rref(A, p)
    return R[: len(pivots)]
