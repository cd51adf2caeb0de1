import numpy as np
import pytest

from ncx import CyclotomicField, PrimeField
from ncx.exactla import kernel_basis
from ncx.generate import random_ncomplex, split_ses, staircase_ses
from ncx.homalg import (
    ShortExactSequence,
    connecting,
    connecting_lift,
    induced_d,
    induced_inclusion,
    internal_hexagon,
    snake_hexagon,
    validate_ses,
)
from ncx.ncomplex import CohomologyTable, GradedMap, NComplex, d_power, staircase, zero_complex

F7 = PrimeField(7, 3, 2)


def truncated(F):
    return NComplex(F, {1: 1, 2: 1}, {1: F.eye(1)})


def staircase_sequence(F):
    return ShortExactSequence(*staircase_ses(F, segs=[(0, F.N)], cuts=[1]))


def test_induced_inclusion_examples():
    C1 = truncated(F7)
    i = induced_inclusion(C1, 1, 1)
    assert i.matrix(2).shape == (0, 1)
    Z = NComplex(F7, {0: 2, 1: 1}, {})
    j = induced_inclusion(Z, 1, 1)
    assert np.array_equal(j.matrix(0), F7.eye(2))


def test_induced_d_examples():
    C1 = truncated(F7)
    f = induced_d(C1, 2, 1)
    assert f.shift == 1 and f.matrix(1).tolist() == [[1]]
    Z = NComplex(F7, {0: 2, 1: 1}, {})
    assert not induced_d(Z, 2, 1).matrix(0).any()


@pytest.mark.parametrize("C", [zero_complex(F7), staircase(F7), truncated(F7)], ids=["zero", "S3", "C1"])
def test_internal_hexagon_small(C):
    assert internal_hexagon(C, 1, 1).exact


def test_internal_hexagon_rejects_bad_indices():
    with pytest.raises(ValueError):
        internal_hexagon(staircase(F7), 1, 2)


def test_validate_ses():
    s = staircase_sequence(F7)
    assert validate_ses(s)
    bad = ShortExactSequence(s.C1, s.C2, s.C3, s.alpha,
                             GradedMap(F7, s.C2.dims, s.C3.dims, 0, {}))
    rep = validate_ses(bad)
    assert not rep.passed and any("surjective" in m for _, m in rep.failures)


@pytest.mark.parametrize("F", [F7, CyclotomicField(3)], ids=repr)
def test_staircase_connecting_is_iso(F):
    s = staircase_sequence(F)
    for k in (1, 2):
        D = connecting(s, k)
        assert D.shift == k
        assert [[F.pretty(x) for x in row] for row in D.matrix(0)] == [["1"]]
        assert snake_hexagon(s, k).exact


def test_split_connecting_is_zero(rng):
    for _ in range(5):
        s = ShortExactSequence(*split_ses(random_ncomplex(F7, rng), random_ncomplex(F7, rng), rng))
        for k in (1, 2):
            D = connecting(s, k)
            assert all(not D.matrix(n).any() for n in D.degrees())


def test_random_staircase_ses_exact(rng):
    for F in (F7, PrimeField(13, 4, 5)):
        for _ in range(5):
            s = ShortExactSequence(*staircase_ses(F, rng))
            assert validate_ses(s)
            for n in range(1, F.N):
                assert snake_hexagon(s, n).exact


def test_connecting_independent_of_lift(rng):
    F = PrimeField(13, 4, 5)
    for _ in range(10):
        s = ShortExactSequence(*staircase_ses(F, rng))
        T1, T3 = CohomologyTable(s.C1), CohomologyTable(s.C3)
        for k in range(1, F.N):
            for n in s.C3.support():
                piece = T3.piece(k, n)
                if not piece.dim or not s.C1.dim(n + k):
                    continue
                x3 = piece.reps[:, 0]
                base = T1.piece(F.N - k, n + k).project(connecting_lift(s, k, n, x3))
                # change representative of the class and the lift
                z = F.random_matrix(rng, s.C3.dim(n - F.N + k), 1)[:, 0]
                if z.size:
                    x3 = F.madd(x3, F.matvec(d_power(s.C3, n - F.N + k, F.N - k), z))
                K = kernel_basis(F, s.beta.matrix(n)).basis
                shift = F.matvec(K, F.random_matrix(rng, K.shape[1], 1)[:, 0]) if K.shape[1] else None
                other = T1.piece(F.N - k, n + k).project(connecting_lift(s, k, n, x3, shift))
                assert np.array_equal(base, other)
