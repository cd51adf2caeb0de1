"""Exit criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measured counts and
wall time, then asserts.  Run with ``pytest tests/test_acceptance.py -v -s``
(or plain ``-v``: the lines are written around pytest's capture).
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from ncx import _kernels
from ncx.coeff import (
    CyclotomicField,
    PrimeField,
    primitive_roots,
    q_binomial,
    q_factorial,
    q_int,
    q_pascal,
    validate_assumption_A,
)
from ncx.exactla import kernel_basis
from ncx.generate import random_homomorphism, random_ncomplex, split_ses, staircase_ses
from ncx.homalg import ShortExactSequence, connecting, connecting_lift, internal_hexagon, snake_hexagon
from ncx.ncomplex import (
    CohomologyTable,
    GradedMap,
    cohomology_dims,
    d_power,
    identity_map,
    induced_on_cohomology,
    validate_ncomplex,
)
from ncx.nhomog import build_A_Rn, build_n_homogeneous, check_dN_zero, find_leibniz_counterexample
from ncx.qdga import QDGA, GradedAlgebra, check_qdga, qpoly_example, twisted_tensor
from ncx.tensor import d_power_expansion, tensor, tensor_vector

from conftest import classical_cohomology_dims, classical_signed_tensor

pytestmark = pytest.mark.acceptance

# one F_p with a primitive N-th root of unity per N
FP = {
    2: PrimeField(11, 2, 10),
    3: PrimeField(7, 3, 2),
    4: PrimeField(13, 4, 5),
    5: PrimeField(11, 5, 3),
    6: PrimeField(7, 6, 3),
    7: PrimeField(29, 7, 7),
    8: PrimeField(17, 8, 2),
}
P_BIG = 998244353
GENERIC = PrimeField(P_BIG, 17, pow(3, (P_BIG - 1) // 17, P_BIG))

# time limits in seconds
LIMITS = {1: 1.0, 2: 1.0, 3: 30.0, 4: 60.0, 6: 120.0, 10: 60.0}


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # keep one-off JIT compilation out of the timed sections
    A = np.array([[1, 2], [3, 4]], dtype=np.int64)
    _kernels.rref_modp(A, 7)
    _kernels.matmul_modp(A, A, 7)


@contextmanager
def criterion(request, number, title):
    state = {"detail": "", "ok": True}
    t0 = time.perf_counter()
    err = None
    try:
        yield state
    except AssertionError as exc:
        err = exc
        state["ok"] = False
    elapsed = time.perf_counter() - t0
    limit = LIMITS.get(number)
    over = limit is not None and elapsed >= limit
    ok = state["ok"] and not over
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {state['detail']} [{elapsed:.2f}s"
    line += f" < {limit:.0f}s]" if limit is not None else "]"
    if over:
        line += " (time limit exceeded)"
    capman = request.config.pluginmanager.getplugin("capturemanager")
    with capman.global_and_fixture_disabled():
        print("\n" + line)
    if err is not None:
        raise err
    assert not over, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_qbinomial_vanishing(request):
    with criterion(request, 1, "q-binomial vanishing") as st:
        checked = 0
        for N in range(2, 9):
            for F in (CyclotomicField(N), FP[N]):
                assert validate_assumption_A(F).passed, repr(F)
                for n in range(1, N):
                    assert not F.is_zero(q_int(F, n)), (F, n)
                for p in range(1, N):
                    assert F.is_zero(q_binomial(F, N, p)), (F, p)
                    checked += 1
        st["detail"] = f"{checked} coefficients zero over Q(zeta_N) and F_p, N=2..8"


def test_criterion_02_recurrence_and_boundary(request):
    F = GENERIC

    def fact(n):
        return q_factorial(F, n) if n else F.one

    with criterion(request, 2, "recurrence and boundary") as st:
        assert validate_assumption_A(F).passed
        rows = q_pascal(F, 17)
        count = 0
        for n in range(17):
            assert rows[n][0] == 1 and rows[n][n] == 1
            for m in range(n):
                lhs = F.add(rows[n][m], F.mul(F.pow(F.q, m + 1), rows[n][m + 1]))
                assert lhs == rows[n + 1][m + 1], (n, m)
                count += 1
            # independent oracle: quotient of q-factorials, all invertible below 17
            for m in range(n + 1):
                closed = F.div(fact(n), F.mul(fact(m), fact(n - m)))
                assert q_binomial(F, n, m) == closed == rows[n][m]
        st["detail"] = f"{count} recurrence identities, n <= 16, over F_{P_BIG}"


def _tensor_corpus():
    rng = np.random.default_rng(20240301)
    pairs = []
    for N in (2, 3, 4, 5):
        F = FP[N]
        while sum(1 for A, _ in pairs if A.N == N) < 25:
            A, B = random_ncomplex(F, rng, 5, 3), random_ncomplex(F, rng, 5, 3)
            if not (A.is_zero or B.is_zero):
                pairs.append((A, B))
    return pairs


@pytest.fixture(scope="module")
def tensor_corpus():
    return _tensor_corpus()


def test_criterion_03_tensor_nilpotency(request, tensor_corpus):
    with criterion(request, 3, "tensor nilpotency") as st:
        for A, B in tensor_corpus:
            assert validate_ncomplex(A) and validate_ncomplex(B)
            assert max(A.hi - A.lo, B.hi - B.lo) < 5
            assert max(A.dims.values()) <= 3 and max(B.dims.values()) <= 3
            rep = validate_ncomplex(tensor(A, B))
            assert rep.passed, rep.failures
        st["detail"] = f"{len(tensor_corpus)} pairs, N in {{2,3,4,5}}"


def test_criterion_04_expansion_oracle(request, tensor_corpus):
    rng = np.random.default_rng(7)
    with criterion(request, 4, "expansion oracle") as st:
        comparisons = 0
        for A, B in tensor_corpus:
            F = A.F
            T = tensor(A, B)
            for _ in range(5):
                r = int(rng.choice(sorted(A.dims)))
                s = int(rng.choice(sorted(B.dims)))
                x0 = F.random_matrix(rng, A.dim(r), 1)[:, 0]
                x1 = F.random_matrix(rng, B.dim(s), 1)[:, 0]
                v = tensor_vector(A, B, x0, r, x1, s)
                w = v
                for k in range(F.N + 1):
                    if k:
                        w = F.matvec(T.diff(r + s + k - 1), w) if T.dim(r + s + k) else F.zeros(0, 1)[:, 0]
                    got = d_power_expansion(A, B, k, x0, r, x1, s)
                    assert np.array_equal(got, w), (k, r, s)
                    comparisons += 1
        st["detail"] = f"{comparisons} comparisons, k = 0..N, 5 element pairs per complex pair"


def test_criterion_05_classical_reduction(request):
    F = PrimeField(11, 2, 10)   # q = -1
    rng = np.random.default_rng(5)
    with criterion(request, 5, "classical reduction at N=2") as st:
        n = 0
        for _ in range(60):
            A, B = random_ncomplex(F, rng), random_ncomplex(F, rng)
            T = tensor(A, B)
            dims, d = classical_signed_tensor(A, B, F.p)
            assert {k: T.dim(k) for k in dims} == dims
            for deg, M in d.items():
                assert np.array_equal(T.diff(deg), M)
            for C in (A, T):
                expect = classical_cohomology_dims(
                    C.dims, {k: C.diff(k) for k in C.dims if C.dim(k + 1)}, F.p)
                got = cohomology_dims(C)[1]
                assert {k: got.get(k, 0) for k in expect} == expect
            n += 1
        st["detail"] = f"{n} random complexes: tensor d entrywise and H_(1) match the classical oracle"


def test_criterion_06_internal_hexagon(request):
    rng = np.random.default_rng(6)
    with criterion(request, 6, "internal hexagon exactness") as st:
        hexes = 0
        for N in (3, 4, 5):
            F = FP[N]
            for _ in range(100):
                C = random_ncomplex(F, rng)
                T = CohomologyTable(C)
                for l in range(1, N):
                    for m in range(1, N - l):
                        h = internal_hexagon(C, l, m, T)
                        assert h.exact, (N, l, m, h.failures())
                        assert len(h.statuses) == 6 * len(C.window())
                        hexes += 1
        st["detail"] = f"{hexes} hexagons on 300 complexes (N=3,4,5), all six nodes, full window"


def test_criterion_07_snake_hexagon(request):
    rng = np.random.default_rng(77)
    with criterion(request, 7, "snake hexagon exactness") as st:
        count = 0
        for i in range(102):
            F = FP[(3, 4, 5)[i % 3]]
            s = ShortExactSequence(*split_ses(random_ncomplex(F, rng), random_ncomplex(F, rng), rng))
            for n in range(1, F.N):
                h = snake_hexagon(s, n)
                assert h.exact, h.failures()
            count += 1
        stair = 0
        for F in (PrimeField(7, 3, 2), CyclotomicField(3)):
            s = ShortExactSequence(*staircase_ses(F, segs=[(0, 3)], cuts=[1]))
            assert all(v == 0 for row in cohomology_dims(s.C2).values() for v in row.values())
            for n in (1, 2):
                assert snake_hexagon(s, n).exact
                D = connecting(s, n)
                assert list(D.mats) == [0]
                assert D.matrix(0).shape == (1, 1) and F.eq(D.matrix(0)[0, 0], F.one)
            stair += 1
        st["detail"] = f"{count} split sums, staircase sequence over {stair} fields with both connecting maps [1]"


def test_criterion_08_connecting_well_defined(request):
    rng = np.random.default_rng(8)
    with criterion(request, 8, "connecting map well-defined") as st:
        instances = perturbations = 0
        while instances < 60:
            F = FP[(3, 4, 5)[instances % 3]]
            s = ShortExactSequence(*staircase_ses(F, rng))
            T1, T3 = CohomologyTable(s.C1), CohomologyTable(s.C3)
            used = False
            for k in range(1, F.N):
                for n in s.C3.support():
                    src = T3.piece(k, n)
                    if not src.dim or not s.C1.dim(n + k):
                        continue
                    tgt = T1.piece(F.N - k, n + k)
                    for j in range(src.dim):
                        x3 = src.reps[:, j]
                        base = tgt.project(connecting_lift(s, k, n, x3))
                        for _ in range(3):
                            # another representative of the class, and another lift of it
                            z = F.random_matrix(rng, s.C3.dim(n - F.N + k), 1)[:, 0]
                            y3 = x3 if not z.size else F.madd(x3, F.matvec(d_power(s.C3, n - F.N + k, F.N - k), z))
                            K = kernel_basis(F, s.beta.matrix(n)).basis
                            shift = F.matvec(K, F.random_matrix(rng, K.shape[1], 1)[:, 0]) if K.shape[1] else None
                            other = tgt.project(connecting_lift(s, k, n, y3, shift))
                            assert np.array_equal(base, other)
                            perturbations += 1
                            used = True
            instances += used
        st["detail"] = f"{instances} sequences, {perturbations} perturbed zig-zags"


QP_FIELDS = {2: PrimeField(3, 2, 2), 3: PrimeField(7, 3, 2), 4: PrimeField(5, 4, 2),
             5: PrimeField(11, 5, 3), 6: PrimeField(7, 6, 3)}


def _corruptions(Q):
    """Yield copies of Q with exactly one structure constant changed."""
    F, A = Q.F, Q.algebra
    for key, M in A.mu.items():
        for idx in np.ndindex(M.shape):
            mu = dict(A.mu)
            M2 = M.copy()
            M2[idx] = F.add(M2[idx], F.one)
            mu[key] = M2
            yield ("mu", key, idx), QDGA(GradedAlgebra(F, A.window, A.dims, A.unit, mu, A.labels),
                                         {n: Q.diff(n) for n in range(Q.window)}, Q.N)
    for n in range(Q.window):
        M = Q.diff(n)
        for idx in np.ndindex(M.shape):
            d = {m: Q.diff(m) for m in range(Q.window)}
            M2 = M.copy()
            M2[idx] = F.add(M2[idx], F.one)
            d[n] = M2
            yield ("d", n, idx), QDGA(A, d, Q.N)


def test_criterion_09_qdga_axioms(request):
    with criterion(request, 9, "qDGA axioms") as st:
        passed = detected = 0
        for N in range(2, 7):
            for F in (CyclotomicField(N), QP_FIELDS[N]):
                Q = qpoly_example(F, 2 * N)
                rep = check_qdga(Q)
                assert rep.passed, (F, rep.first)
                passed += 1
                for where, bad in _corruptions(Q):
                    assert not check_qdga(bad).passed, (F, where)
                    detected += 1
        st["detail"] = f"{passed} examples pass (N=2..6, window 2N, both fields); {detected}/{detected} corruptions detected"


def test_criterion_10_n_homogeneous(request):
    with criterion(request, 10, "N-homogeneous example") as st:
        A13 = build_n_homogeneous(CyclotomicField(3), 1, 3, 3)
        assert tuple(A13.dims().values()) == (1, 1, 1, 0)
        A23 = build_n_homogeneous(CyclotomicField(3), 2, 3, 3)
        assert tuple(A23.dims().values()) == (1, 2, 4, 4)
        witnesses = 0
        for n, N in ((1, 3), (2, 3), (2, 4)):
            F = CyclotomicField(N)
            R = build_A_Rn(F, n, N, N + 1, N)
            rep = check_dN_zero(R)
            assert rep.passed and rep.checked > 0, rep.failures
            for q in primitive_roots(F):
                assert find_leibniz_counterexample(R, q) is not None, (n, N, q)
                witnesses += 1
                assert find_leibniz_counterexample(R, q, degree0_only=True) is None
        st["detail"] = f"dims match; d^N = 0 on 3 windows; {witnesses} primitive roots each give a witness, degree-0 scans clean"


def test_criterion_11_twisted_tensor(request):
    with criterion(request, 11, "tensor of qDGAs") as st:
        for F in (CyclotomicField(3), PrimeField(7, 3, 2)):
            res = twisted_tensor(qpoly_example(F, 6), qpoly_example(F, 6))
            assert res.dN.passed and not res.leibniz.passed
            w = res.leibniz.first
            assert w.x and w.y
        for F in (CyclotomicField(2), PrimeField(11, 2, 10)):
            res = twisted_tensor(qpoly_example(F, 4), qpoly_example(F, 4))
            assert res.dN.passed and res.leibniz.passed
        st["detail"] = f"N=3 d^N=0 but Leibniz fails (witness x={w.x}, y={w.y}); N=2 passes"


def test_criterion_12_functoriality(request):
    rng = np.random.default_rng(12)
    with criterion(request, 12, "functoriality") as st:
        pairs = 0
        for i in range(54):
            F = FP[(3, 4, 5)[i % 3]]
            A, B, C = (random_ncomplex(F, rng, 4, 3) for _ in range(3))
            f, g = random_homomorphism(A, B, rng), random_homomorphism(B, C, rng)
            TA, TB, TC = CohomologyTable(A), CohomologyTable(B), CohomologyTable(C)
            for k in range(1, F.N):
                dims = TA.graded_dims(k)
                ident = GradedMap(F, dims, dims, 0, {n: F.eye(v) for n, v in dims.items()})
                assert induced_on_cohomology(identity_map(A), A, A, k, TA, TA).equals(ident)
                lhs = induced_on_cohomology(g.compose(f), A, C, k, TA, TC)
                rhs = induced_on_cohomology(g, B, C, k, TB, TC).compose(
                    induced_on_cohomology(f, A, B, k, TA, TB))
                assert lhs.equals(rhs)
            pairs += 1
        st["detail"] = f"{pairs} homomorphism pairs, identity and composition on every H_(k)"
