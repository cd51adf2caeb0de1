"""Kapranov tensor product of N-complexes.

    (C0 (x) C1)^n = sum_{r+s=n} C0^r (x) C1^s
    d(x0 (x) x1)  = d x0 (x) x1 + q^r x0 (x) d x1      (r = deg x0)

The twist uses the degree of the *left* factor, never the total degree.
Within degree n the basis is ordered by r ascending, then the C0^r index,
then the C1^s index.
"""

from __future__ import annotations

import numpy as np

from .coeff import q_binomial
from .errors import ShapeError
from .ncomplex import NComplex, d_power


def tensor_blocks(C0: NComplex, C1: NComplex) -> dict:
    """``{n: [(r, s, offset), ...]}`` in canonical order."""
    blocks: dict = {}
    for r in sorted(C0.dims):
        for s in sorted(C1.dims):
            blocks.setdefault(r + s, []).append((r, s))
    out = {}
    for n, pairs in blocks.items():
        pairs.sort()
        off = 0
        lst = []
        for r, s in pairs:
            lst.append((r, s, off))
            off += C0.dim(r) * C1.dim(s)
        out[n] = lst
    return out


def tensor_labels(C0: NComplex, C1: NComplex) -> dict:
    """``{n: [(r, i, s, j), ...]}``: basis element e_i^r (x) e_j^s at each position."""
    out = {}
    for n, lst in tensor_blocks(C0, C1).items():
        labels = []
        for r, s, _ in lst:
            for i in range(C0.dim(r)):
                for j in range(C1.dim(s)):
                    labels.append((r, i, s, j))
        out[n] = labels
    return out


def _check_compatible(C0: NComplex, C1: NComplex) -> None:
    if C0.F != C1.F or C0.N != C1.N:
        raise ValueError("tensor factors must share field and N")


def tensor(C0: NComplex, C1: NComplex) -> NComplex:
    _check_compatible(C0, C1)
    F = C0.F
    F.check_assumption()
    blocks = tensor_blocks(C0, C1)
    dims = {n: sum(C0.dim(r) * C1.dim(s) for r, s, _ in lst) for n, lst in blocks.items()}
    d = {}
    for n, lst in blocks.items():
        if n + 1 not in blocks:
            continue
        target = {(r, s): off for r, s, off in blocks[n + 1]}
        M = F.zeros(dims[n + 1], dims[n])
        for r, s, off in lst:
            a, b = C0.dim(r), C1.dim(s)
            if (r + 1, s) in target and C0.dim(r + 1):
                t = target[(r + 1, s)]
                blk = F.kron(C0.diff(r), F.eye(b))
                M[t:t + blk.shape[0], off:off + a * b] = F.madd(M[t:t + blk.shape[0], off:off + a * b], blk)
            if (r, s + 1) in target and C1.dim(s + 1):
                t = target[(r, s + 1)]
                blk = F.smul(F.pow(F.q, r), F.kron(F.eye(a), C1.diff(s)))
                M[t:t + blk.shape[0], off:off + a * b] = F.madd(M[t:t + blk.shape[0], off:off + a * b], blk)
        d[n] = M
    return NComplex(F, dims, d)


def tensor_vector(C0: NComplex, C1: NComplex, x0: np.ndarray, r: int, x1: np.ndarray, s: int,
                  blocks: dict | None = None) -> np.ndarray:
    """Coordinates of x0 (x) x1 in the canonical basis of (C0 (x) C1)^(r+s)."""
    F = C0.F
    blocks = blocks or tensor_blocks(C0, C1)
    n = r + s
    lst = blocks.get(n, [])
    total = sum(C0.dim(a) * C1.dim(b) for a, b, _ in lst)
    v = F.zeros(total, 1)[:, 0]
    if x0.shape != (C0.dim(r),) or x1.shape != (C1.dim(s),):
        raise ShapeError("tensorand does not match the degree")
    for a, b, off in lst:
        if (a, b) == (r, s):
            blk = F.kron(x0.reshape(-1, 1), x1.reshape(-1, 1))[:, 0]
            v[off:off + blk.shape[0]] = blk
    return v


def d_power_expansion(C0: NComplex, C1: NComplex, k: int, x0: np.ndarray, r: int,
                      x1: np.ndarray, s: int) -> np.ndarray:
    """d^k(x0 (x) x1) = sum_p q^(r(k-p)) [k choose p]_q d^p x0 (x) d^(k-p) x1."""
    _check_compatible(C0, C1)
    F = C0.F
    if not 0 <= k <= F.N:
        raise ValueError(f"k must lie in 0..{F.N}")
    F.check_assumption()
    blocks = tensor_blocks(C0, C1)
    n = r + s + k
    total = sum(C0.dim(a) * C1.dim(b) for a, b, _ in blocks.get(n, []))
    out = F.zeros(total, 1)[:, 0]
    for p in range(k + 1):
        coef = F.mul(F.pow(F.q, r * (k - p)), q_binomial(F, k, p))
        if F.is_zero(coef):
            continue
        y0 = F.matvec(d_power(C0, r, p), x0)
        y1 = F.matvec(d_power(C1, s, k - p), x1)
        if y0.size == 0 or y1.size == 0:
            continue
        term = tensor_vector(C0, C1, y0, r + p, y1, s + k - p, blocks)
        out = F.madd(out, F.smul(coef, term.reshape(-1, 1))[:, 0])
    return out


def associator_permutation(C0: NComplex, C1: NComplex, C2: NComplex) -> dict:
    """Per degree, ``perm`` with left-bracketed index i <-> right-bracketed index perm[i]."""
    L01 = tensor_labels(C0, C1)
    T01 = _lazy_tensor_shape(C0, C1)
    T12 = _lazy_tensor_shape(C1, C2)
    L12 = tensor_labels(C1, C2)
    left = {}
    for n, labels in tensor_labels(T01, C2).items():
        left[n] = [L01[t][a] + (u, c) for (t, a, u, c) in labels]
    right = {}
    for n, labels in tensor_labels(C0, T12).items():
        right[n] = [(r, i) + L12[t][b] for (r, i, t, b) in labels]
    perms = {}
    for n in left:
        index = {lab: idx for idx, lab in enumerate(right[n])}
        perms[n] = [index[lab] for lab in left[n]]
    return perms


def _lazy_tensor_shape(C0: NComplex, C1: NComplex) -> NComplex:
    blocks = tensor_blocks(C0, C1)
    dims = {n: sum(C0.dim(r) * C1.dim(s) for r, s, _ in lst) for n, lst in blocks.items()}
    return NComplex(C0.F, dims, {}, check_shapes=False)


def tensor_associator_check(C0: NComplex, C1: NComplex, C2: NComplex) -> bool:
    """Compare the differentials of (C0 (x) C1) (x) C2 and C0 (x) (C1 (x) C2)."""
    _check_compatible(C0, C1)
    _check_compatible(C1, C2)
    F = C0.F
    A = tensor(tensor(C0, C1), C2)
    B = tensor(C0, tensor(C1, C2))
    if A.dims != B.dims:
        return False
    perms = associator_permutation(C0, C1, C2)
    for n in A.dims:
        if n + 1 not in A.dims:
            continue
        p_src, p_tgt = perms[n], perms[n + 1]
        # express B's differential in A's ordering
        Bn = B.diff(n)[np.ix_(p_tgt, p_src)]
        if not F.is_zero_matrix(F.msub(A.diff(n), Bn)):
            return False
    return True
