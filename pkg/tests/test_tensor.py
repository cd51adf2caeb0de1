import numpy as np
import pytest

from ncx import CyclotomicField, PrimeField
from ncx.generate import random_ncomplex
from ncx.ncomplex import NComplex, d_power, staircase, validate_ncomplex, zero_complex
from ncx.tensor import d_power_expansion, tensor, tensor_associator_check, tensor_vector
from ncx.errors import AssumptionError

from conftest import classical_signed_tensor

F7 = PrimeField(7, 3, 2)


def two_term(F):
    return staircase(F, 0, 2)


def test_two_term_staircases():
    T = tensor(two_term(F7), two_term(F7))
    assert T.dims == {0: 1, 1: 2, 2: 1}
    assert T.diff(0).tolist() == [[1], [1]]
    # blocks at degree 1: (0,1) then (1,0)
    assert T.diff(1).tolist() == [[1, 2]]
    assert d_power(T, 0, 2).tolist() == [[3]]


def test_tensor_with_zero():
    assert tensor(staircase(F7), zero_complex(F7)).is_zero


def test_requires_assumption():
    F = PrimeField(5, 3, 2)
    with pytest.raises(AssumptionError):
        tensor(staircase(F), staircase(F))


def test_expansion_boundaries(rng):
    A, B = random_ncomplex(F7, rng), random_ncomplex(F7, rng)
    T = tensor(A, B)
    for r in A.dims:
        for s in B.dims:
            x0 = F7.random_matrix(rng, A.dim(r), 1)[:, 0]
            x1 = F7.random_matrix(rng, B.dim(s), 1)[:, 0]
            v = tensor_vector(A, B, x0, r, x1, s)
            assert np.array_equal(d_power_expansion(A, B, 0, x0, r, x1, s), v)
            assert not d_power_expansion(A, B, 3, x0, r, x1, s).any()
            # k = 1 is the defining formula
            y = F7.madd(tensor_vector(A, B, F7.matvec(A.diff(r), x0), r + 1, x1, s)
                        if A.dim(r + 1) and B.dim(s) else F7.zeros(T.dim(r + s + 1), 1)[:, 0],
                        F7.smul(F7.pow(2, r), tensor_vector(A, B, x0, r, F7.matvec(B.diff(s), x1), s + 1)
                                .reshape(-1, 1))[:, 0]
                        if B.dim(s + 1) else F7.zeros(T.dim(r + s + 1), 1)[:, 0])
            assert np.array_equal(d_power_expansion(A, B, 1, x0, r, x1, s), y)


def test_n2_matches_signed_formula(rng):
    F = PrimeField(11, 2, 10)
    for _ in range(10):
        A, B = random_ncomplex(F, rng), random_ncomplex(F, rng)
        T = tensor(A, B)
        dims, d = classical_signed_tensor(A, B, 11)
        assert {n: T.dim(n) for n in dims} == dims
        for n, M in d.items():
            assert np.array_equal(T.diff(n), M)


def test_associator(rng):
    for _ in range(5):
        Cs = [staircase(F7, int(rng.integers(-1, 2)), int(rng.integers(1, 4))) for _ in range(3)]
        assert tensor_associator_check(*Cs)
    zero_d = NComplex(F7, {0: 2, 1: 1}, {})
    assert tensor_associator_check(zero_d, zero_d, zero_d)
    assert tensor_associator_check(staircase(F7), staircase(F7), zero_complex(F7))


def test_cyclotomic_tensor_nilpotent():
    F = CyclotomicField(4)
    assert validate_ncomplex(tensor(staircase(F), staircase(F, 1, 2)))
