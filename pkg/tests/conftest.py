import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from ncx import CyclotomicField, PrimeField

SMALL_FIELDS = [PrimeField(7, 3, 2), PrimeField(13, 4, 5), PrimeField(11, 5, 3), PrimeField(7, 2, 6)]


def sympy_rank_modp(M, p):
    """Independent rank over F_p via sympy's domain matrices."""
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return 0
    K = GF(p)
    dm = DomainMatrix([[K(int(x)) for x in row] for row in M], (rows, cols), K)
    return dm.rank()


def classical_cohomology_dims(dims, d, p):
    """ker d / im d per degree for an ordinary complex over F_p (numpy ints)."""
    out = {}
    for n in dims:
        dout = d.get(n)
        din = d.get(n - 1)
        ker = dims[n] - (sympy_rank_modp(dout, p) if dout is not None else 0)
        im = sympy_rank_modp(din, p) if din is not None else 0
        out[n] = ker - im
    return out


def classical_signed_tensor(A, B, p):
    """Independent assembly of d(x (x) y) = dx (x) y + (-1)^r x (x) dy."""
    degs = sorted({r + s for r in A.dims for s in B.dims})
    blocks = {n: [(r, n - r) for r in sorted(A.dims) if n - r in B.dims] for n in degs}
    offs = {}
    for n, lst in blocks.items():
        o = 0
        for r, s in lst:
            offs[(r, s)] = o
            o += A.dim(r) * B.dim(s)
    dims = {n: sum(A.dim(r) * B.dim(s) for r, s in blocks[n]) for n in degs}
    d = {}
    for n in degs:
        if not dims.get(n + 1):
            continue
        M = np.zeros((dims[n + 1], dims[n]), dtype=np.int64)
        for r, s in blocks[n]:
            c0 = offs[(r, s)]
            if (r + 1, s) in offs:
                blk = np.kron(A.diff(r), np.eye(B.dim(s), dtype=np.int64))
                o = offs[(r + 1, s)]
                M[o:o + blk.shape[0], c0:c0 + blk.shape[1]] += blk
            if (r, s + 1) in offs:
                blk = (-1) ** r * np.kron(np.eye(A.dim(r), dtype=np.int64), B.diff(s))
                o = offs[(r, s + 1)]
                M[o:o + blk.shape[0], c0:c0 + blk.shape[1]] += blk
        d[n] = M % p
    return dims, d


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=SMALL_FIELDS, ids=repr)
def small_field(request):
    return request.param


@pytest.fixture
def cyc3():
    return CyclotomicField(3)
