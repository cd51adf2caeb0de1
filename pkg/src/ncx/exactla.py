"""Deterministic exact linear algebra over a :class:`~ncx.coeff.Field`.

Matrices are numpy arrays produced by the field; subspaces are carried as a
basis matrix whose columns are linearly independent.  Pivoting is fixed
(columns left to right, first nonzero row), so every basis produced here is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coeff import Field
from .errors import ContainmentError, ShapeError


def rref(F: Field, M: np.ndarray):
    """Return ``(R, rank, pivot_columns)``."""
    if M.shape[0] == 0 or M.shape[1] == 0:
        return M.copy(), 0, []
    R, piv = F.rref(M)
    return R, len(piv), piv


def rank(F: Field, M: np.ndarray) -> int:
    return rref(F, M)[1]


@dataclass(frozen=True)
class Subspace:
    """Column span of ``basis`` inside ``F^ambient``."""

    ambient: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def span(F: Field, M: np.ndarray) -> Subspace:
    return image_basis(F, M)


def kernel_basis(F: Field, M: np.ndarray) -> Subspace:
    """Basis of the null space, one vector per free column (in column order)."""
    rows, cols = M.shape
    R, r, piv = rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    K = F.zeros(cols, len(free))
    for j, f in enumerate(free):
        K[f, j] = F.one
        for i, pc in enumerate(piv):
            K[pc, j] = F.neg(R[i, f])
    return Subspace(cols, K)


def image_basis(F: Field, M: np.ndarray) -> Subspace:
    """Pivot columns of ``M``."""
    _, _, piv = rref(F, M)
    return Subspace(M.shape[0], M[:, piv].copy())


def solve(F: Field, M: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Particular solution of ``M x = b`` with free variables zero, or ``None``."""
    rows, cols = M.shape
    if b.shape != (rows,):
        raise ShapeError(f"rhs of length {b.shape} for a {rows}x{cols} system")
    if rows == 0:
        return F.zeros(cols, 1)[:, 0]
    aug = np.concatenate([M, b.reshape(-1, 1)], axis=1)
    R, r, piv = rref(F, aug)
    if piv and piv[-1] == cols:
        return None
    x = F.zeros(cols, 1)[:, 0]
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    return x


def inverse(F: Field, M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    if M.shape != (n, n):
        raise ShapeError("inverse of a non-square matrix")
    if n == 0:
        return M.copy()
    R, r, piv = rref(F, np.concatenate([M, F.eye(n)], axis=1))
    if r < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:].copy()


class Quotient:
    """The quotient ``ambient / sub`` with a deterministic complement basis.

    ``reps`` holds the ambient basis vectors not absorbed when ``sub``'s basis
    is extended through ``ambient``'s basis in order.  :meth:`project` sends a
    vector of ``span(ambient)`` to its coordinates on ``reps`` modulo ``sub``.
    """

    def __init__(self, F: Field, ambient: Subspace, sub: Subspace):
        if ambient.ambient != sub.ambient:
            raise ShapeError("subspaces live in different spaces")
        self.F = F
        self.ambient = ambient
        self.sub = sub
        n = ambient.ambient
        s = sub.dim
        stacked = np.concatenate([sub.basis, ambient.basis], axis=1)
        _, r, piv = rref(F, stacked) if stacked.shape[1] else (None, 0, [])
        if r != ambient.dim or piv[:s] != list(range(s)):
            raise ContainmentError("sub is not contained in ambient (or bases are dependent)")
        chosen = [c - s for c in piv[s:]]
        self.rep_indices = chosen
        self.reps = ambient.basis[:, chosen].copy()
        # left inverse of B = [sub | reps]: E [B | I] = [[I_r],[0] | E]
        B = np.concatenate([sub.basis, self.reps], axis=1)
        if n == 0:
            self._left = F.zeros(0, 0)
            self._annih = F.zeros(0, 0)
        else:
            R, _, _ = rref(F, np.concatenate([B, F.eye(n)], axis=1))
            E = R[:, B.shape[1]:]
            self._left = E[s:B.shape[1]].copy()
            self._annih = E[B.shape[1]:].copy()

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    def contains(self, v: np.ndarray) -> bool:
        """True iff ``v`` lies in ``span(ambient)``."""
        if self._annih.shape[0] == 0:
            return True
        return self.F.is_zero_matrix(self.F.matvec(self._annih, v))

    def project(self, v: np.ndarray) -> np.ndarray:
        if not self.contains(v):
            raise ContainmentError("vector outside the ambient subspace")
        if self.dim == 0:
            return self.F.zeros(0, 1)[:, 0]
        return self.F.matvec(self._left, v)

    def project_matrix(self, V: np.ndarray) -> np.ndarray:
        """Project each column of ``V``."""
        if self._annih.shape[0] and V.shape[1]:
            if not self.F.is_zero_matrix(self.F.matmul(self._annih, V)):
                raise ContainmentError("vector outside the ambient subspace")
        if self.dim == 0 or V.shape[1] == 0:
            return self.F.zeros(self.dim, V.shape[1])
        return self.F.matmul(self._left, V)


def quotient(F: Field, ambient: Subspace, sub: Subspace) -> Quotient:
    return Quotient(F, ambient, sub)


def in_span(F: Field, S: Subspace, v: np.ndarray) -> bool:
    return solve(F, S.basis, v) is not None
