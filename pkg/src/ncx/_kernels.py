"""Hot loops for dense linear algebra over F_p.

Each kernel has a numba-compiled version and a pure numpy version with
identical output.  Set ``NCX_DISABLE_NUMBA=1`` to force the numpy path
(it is also used automatically when numba cannot be imported).

All kernels expect ``int64`` arrays with entries in ``[0, p)`` and
``p < 2**31`` so that a single product fits in 63 bits.
"""

from __future__ import annotations

import os

import numpy as np

MAX_KERNEL_PRIME = 2**31


def _env_disabled() -> bool:
    return os.environ.get("NCX_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy reference path

def rref_modp_numpy(A: np.ndarray, p: int):
    R = np.array(A, dtype=np.int64, copy=True)
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        f = R[:, c].copy()
        f[r] = 0
        if f.any():
            R = (R - np.outer(f, R[r])) % p
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


def matmul_modp_numpy(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    m, k = A.shape
    n = B.shape[1]
    out = np.zeros((m, n), dtype=np.int64)
    if k == 0 or m == 0 or n == 0:
        return out
    # how many products can be summed before int64 overflow
    chunk = max(1, (2**63 - 1 - p) // max(1, (p - 1) ** 2))
    for s in range(0, k, chunk):
        out = (out + A[:, s:s + chunk] @ B[s:s + chunk, :]) % p
    return out


# ---------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod(a, p):
        t, new_t = 0, 1
        r, new_r = p, a
        while new_r != 0:
            quo = r // new_r
            t, new_t = new_t, t - quo * new_t
            r, new_r = new_r, r - quo * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_modp_jit(A, p):
        R = A.copy()
        m, n = R.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if R[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(n):
                    tmp = R[r, j]
                    R[r, j] = R[piv, j]
                    R[piv, j] = tmp
            inv = _inv_mod(R[r, c], p)
            for j in range(n):
                R[r, j] = (R[r, j] * inv) % p
            for i in range(m):
                if i != r:
                    f = R[i, c]
                    if f != 0:
                        for j in range(n):
                            R[i, j] = (R[i, j] - f * R[r, j]) % p
            pivots[r] = c
            r += 1
        return R, pivots[:r]

    @njit(cache=True)
    def _matmul_modp_jit(A, B, p):
        m, k = A.shape
        n = B.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        for i in range(m):
            for t in range(k):
                a = A[i, t]
                if a != 0:
                    for j in range(n):
                        out[i, j] = (out[i, j] + a * B[t, j]) % p
        return out


def use_numba() -> bool:
    return HAVE_NUMBA and not _env_disabled()


def rref_modp(A: np.ndarray, p: int):
    """Reduced row echelon form over F_p; returns ``(R, pivot_columns)``."""
    A = np.ascontiguousarray(A, dtype=np.int64)
    if use_numba():
        R, piv = _rref_modp_jit(A, np.int64(p))
        return R, piv
    return rref_modp_numpy(A, p)


def matmul_modp(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if use_numba():
        return _matmul_modp_jit(A, B, np.int64(p))
    return matmul_modp_numpy(A, B, p)
