import numpy as np
from hypothesis import given, settings, strategies as st

from ncx import CyclotomicField, PrimeField
from ncx.exactla import Subspace, image_basis, inverse, kernel_basis, quotient, rank, rref, solve

from conftest import sympy_rank_modp

F7 = PrimeField(7, 3, 2)


def test_rref_examples():
    R, r, piv = rref(F7, F7.zeros(2, 3))
    assert r == 0 and piv == []
    R, r, piv = rref(F7, F7.eye(3))
    assert r == 3 and np.array_equal(R, F7.eye(3))
    R, r, piv = rref(F7, F7.matrix([[2, 4], [1, 2]]))
    assert r == 1 and list(piv) == [0]


def test_kernel_image_examples():
    M = F7.matrix([[2, 1]])
    assert kernel_basis(F7, M).dim == 1 and image_basis(F7, M).dim == 1
    assert kernel_basis(F7, F7.eye(3)).dim == 0
    Z = F7.zeros(2, 4)
    assert kernel_basis(F7, Z).dim == 4 and image_basis(F7, Z).dim == 0


def test_solve_examples():
    b = F7.vector([3, 1])
    assert np.array_equal(solve(F7, F7.eye(2), b), b)
    assert list(solve(F7, F7.matrix([[2, 1]]), F7.vector([3]))) == [5, 0]
    assert solve(F7, F7.zeros(1, 2), F7.vector([1])) is None


def test_quotient_examples():
    amb = Subspace(2, F7.eye(2))
    Q = quotient(F7, amb, Subspace(2, F7.matrix([[1], [0]])))
    assert Q.dim == 1 and list(Q.reps[:, 0]) == [0, 1]
    assert quotient(F7, amb, amb).dim == 0
    assert quotient(F7, amb, Subspace(2, F7.zeros(2, 0))).dim == 2


def test_cyclotomic_linear_algebra():
    F = CyclotomicField(3)
    q = F.q
    M = F.matrix([[F.one, q], [q, F.mul(q, q)]])
    assert rank(F, M) == 1
    A = F.matrix([[F.one, q], [F.zero, F.one]])
    Ai = inverse(F, A)
    assert np.array_equal(F.matmul(A, Ai), F.eye(2))


@st.composite
def f13_matrix(draw, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    vals = draw(st.lists(st.integers(0, 12), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c)


F13 = PrimeField(13, 4, 5)


@settings(max_examples=100, deadline=None)
@given(f13_matrix())
def test_rank_nullity_and_oracle(M):
    r = rank(F13, M)
    assert r == sympy_rank_modp(M, 13)
    K = kernel_basis(F13, M)
    assert K.dim + r == M.shape[1]
    if K.dim:
        assert F13.is_zero_matrix(F13.matmul(M, K.basis))


@settings(max_examples=100, deadline=None)
@given(f13_matrix(), st.data())
def test_solve_finds_solutions(M, data):
    x = np.array(data.draw(st.lists(st.integers(0, 12), min_size=M.shape[1], max_size=M.shape[1])),
                 dtype=np.int64)
    b = F13.matvec(M, x)
    y = solve(F13, M, b)
    assert y is not None and np.array_equal(F13.matvec(M, y), b)


@settings(max_examples=80, deadline=None)
@given(f13_matrix(), st.data())
def test_quotient_projection_kills_sub(M, data):
    # ambient = column span of [M | extra], sub = column span of M
    extra = np.array(data.draw(st.lists(st.integers(0, 12), min_size=M.shape[0] * 2,
                                        max_size=M.shape[0] * 2)), dtype=np.int64).reshape(M.shape[0], 2)
    amb = image_basis(F13, np.hstack([M, extra]))
    sub = image_basis(F13, M)
    Q = quotient(F13, amb, sub)
    assert Q.dim == amb.dim - sub.dim
    if sub.dim:
        assert F13.is_zero_matrix(Q.project_matrix(sub.basis))
    # reps project to the identity
    assert np.array_equal(Q.project_matrix(Q.reps), F13.eye(Q.dim))
