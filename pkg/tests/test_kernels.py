import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncx import _kernels

from conftest import sympy_rank_modp

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


@st.composite
def modp_matrices(draw):
    p = draw(st.sampled_from([2, 7, 13, 10007, 2147483647]))
    r = draw(st.integers(0, 7))
    c = draw(st.integers(0, 7))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


@settings(max_examples=80, deadline=None)
@given(modp_matrices())
def test_numpy_rref_rank_matches_sympy(data):
    A, p = data
    R, piv = _kernels.rref_modp_numpy(A, p)
    assert len(piv) == sympy_rank_modp(A, p)
    # reduced: pivot columns are unit vectors
    for i, c in enumerate(piv):
        col = R[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


@needs_numba
@settings(max_examples=80, deadline=None)
@given(modp_matrices())
def test_numba_and_numpy_agree(data):
    A, p = data
    R1, p1 = _kernels._rref_modp_jit(A.copy(), np.int64(p))
    R2, p2 = _kernels.rref_modp_numpy(A, p)
    assert np.array_equal(R1, R2) and np.array_equal(p1, p2)
    B = A.T.copy()
    assert np.array_equal(_kernels._matmul_modp_jit(A, B, np.int64(p)), _kernels.matmul_modp_numpy(A, B, p))


def test_large_prime_matmul_no_overflow():
    p = 2147483647
    A = np.full((3, 40), p - 1, dtype=np.int64)
    expect = (40 * (p - 1) ** 2) % p
    out = _kernels.matmul_modp_numpy(A, A.T.copy(), p)
    assert (out == expect).all()


def test_env_flag_disables_numba(monkeypatch):
    monkeypatch.setenv("NCX_DISABLE_NUMBA", "1")
    assert not _kernels.use_numba()
