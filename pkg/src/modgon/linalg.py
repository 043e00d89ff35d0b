"""Exact linear algebra over the shared field interface, plus a fast
numpy Gaussian elimination mod p for the large Koszul matrices."""

from __future__ import annotations

import numpy as np


class BudgetExceeded(RuntimeError):
    """Raised when a search would exceed its configured field-op budget."""


class Budget:
    """A crude field-operation counter shared across a search."""

    def __init__(self, cap: int = 10**8):
        self.cap = cap
        self.spent = 0

    def charge(self, n: int):
        self.spent += n
        if self.spent > self.cap:
            raise BudgetExceeded(f"budget of {self.cap} field operations exceeded")


def rank(field, rows: list[list], budget: Budget | None = None) -> int:
    """Row rank by Gaussian elimination; rows are consumed as a copy."""
    mat = [row[:] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    if budget is not None:
        budget.charge(len(mat) * ncols)
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def solve(field, a_rows: list[list], b: list):
    """One solution x of A x = b, or None when inconsistent.

    Free variables are pinned to zero, which keeps the choice deterministic.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [a_rows[i][:] + [b[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if not field.is_zero(aug[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = field.inv(aug[r][c])
        aug[r] = [field.mul(inv, x) for x in aug[r]]
        for i in range(m):
            if i != r and not field.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if not field.is_zero(aug[i][n]):
            return None
    x = [field.zero] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def kernel_basis(field, a_rows: list[list]) -> list[list]:
    """Basis of the right kernel of A, deterministic ordering."""
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    mat = [row[:] for row in a_rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if not field.is_zero(mat[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(m):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero] * n
        v[fcol] = field.one
        for i, c in enumerate(pivots):
            v[c] = field.neg(mat[i][fcol])
        basis.append(v)
    return basis


def rank_modp(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p (vectorised row reduction)."""
    a = np.array(matrix, dtype=np.int64) % p
    m, n = a.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[r + 1 :, c]
        mask = col != 0
        if mask.any():
            a[r + 1 :][mask] = (a[r + 1 :][mask] - np.outer(col[mask], a[r])) % p
        r += 1
        if r == m:
            break
    return r
