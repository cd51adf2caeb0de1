"""Graded algebras with an N-differential, given by structure constants.

A monoid in the category of N-complexes (with the twisted tensor product)
is a graded associative unital algebra whose N-differential obeys

    d(xy) = d(x) y + q^n x d(y)        for x of degree n.

Everything is checked on a finite window ``0..D``: products and
differentials that would land above ``D`` are never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coeff import Field, q_int, validate_assumption_A
from .errors import AssumptionError, ShapeError
from .ncomplex import NComplex
from .tensor import tensor, tensor_labels


class GradedAlgebra:
    """``mu[(i, j)]`` has shape ``dims[i+j] x (dims[i] * dims[j])``; the column
    for ``e_a (x) e_b`` is ``a * dims[j] + b``."""

    def __init__(self, F: Field, window: int, dims: dict, unit, mu: dict,
                 labels: Optional[dict] = None):
        self.F = F
        self.window = int(window)
        self.dims = {n: int(dims.get(n, 0)) for n in range(self.window + 1)}
        self.unit = np.asarray(unit) if len(unit) else F.zeros(0, 1)[:, 0]
        if self.unit.shape != (self.dims[0],):
            raise ShapeError(f"unit has length {self.unit.shape}, degree 0 has dim {self.dims[0]}")
        self.mu = {}
        for (i, j), M in mu.items():
            i, j = int(i), int(j)
            if i + j > self.window:
                continue
            expect = (self.dims[i + j], self.dims[i] * self.dims[j])
            if M.shape != expect:
                raise ShapeError(f"mu({i},{j}) has shape {M.shape}, expected {expect}")
            self.mu[(i, j)] = M
        self.labels = labels or {n: [f"e{n}_{a}" for a in range(self.dims[n])] for n in self.dims}

    def product(self, i: int, j: int) -> np.ndarray:
        M = self.mu.get((i, j))
        if M is None:
            return self.F.zeros(self.dims[i + j], self.dims[i] * self.dims[j])
        return M

    def multiply(self, i: int, x: np.ndarray, j: int, y: np.ndarray) -> np.ndarray:
        F = self.F
        xy = F.kron(x.reshape(-1, 1), y.reshape(-1, 1))
        return F.matmul(self.product(i, j), xy)[:, 0]


class QDGA:
    """Graded algebra plus ``d[n]`` of shape ``dims[n+1] x dims[n]`` for ``n < D``."""

    def __init__(self, algebra: GradedAlgebra, d: dict, N: Optional[int] = None):
        self.algebra = algebra
        self.F = algebra.F
        self.N = self.F.N if N is None else int(N)
        self.d = {}
        for n, M in d.items():
            n = int(n)
            if n >= algebra.window:
                continue
            expect = (algebra.dims[n + 1], algebra.dims[n])
            if M.shape != expect:
                raise ShapeError(f"d at degree {n} has shape {M.shape}, expected {expect}")
            self.d[n] = M

    @property
    def window(self) -> int:
        return self.algebra.window

    @property
    def dims(self) -> dict:
        return self.algebra.dims

    def diff(self, n: int) -> np.ndarray:
        M = self.d.get(n)
        if M is None:
            return self.F.zeros(self.dims.get(n + 1, 0), self.dims.get(n, 0))
        return M

    def as_ncomplex(self) -> NComplex:
        return NComplex(self.F, self.dims, {n: self.diff(n) for n in range(self.window)})


@dataclass
class CheckReport:
    name: str
    passed: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    @property
    def first(self):
        return self.failures[0] if self.failures else None


def _nonzero_columns(F: Field, M: np.ndarray) -> list:
    return [c for c in range(M.shape[1]) if not F.is_zero_matrix(M[:, c:c + 1])]


def check_graded_algebra(A: GradedAlgebra) -> CheckReport:
    """Unit laws and associativity over all basis triples with i+j+k <= D."""
    F, D, dims = A.F, A.window, A.dims
    failures = []
    u = A.unit.reshape(-1, 1)
    for j in range(D + 1):
        if not dims[j]:
            continue
        I = F.eye(dims[j])
        left = F.matmul(A.product(0, j), F.kron(u, I))
        right = F.matmul(A.product(j, 0), F.kron(I, u))
        for c in _nonzero_columns(F, F.msub(left, I)):
            failures.append(("left unit", (0, j), (A.labels[j][c],)))
        for c in _nonzero_columns(F, F.msub(right, I)):
            failures.append(("right unit", (j, 0), (A.labels[j][c],)))
    for i in range(D + 1):
        for j in range(D + 1 - i):
            for k in range(D + 1 - i - j):
                di, dj, dk = dims[i], dims[j], dims[k]
                if not (di and dj and dk):
                    continue
                lhs = F.matmul(A.product(i + j, k), F.kron(A.product(i, j), F.eye(dk)))
                rhs = F.matmul(A.product(i, j + k), F.kron(F.eye(di), A.product(j, k)))
                for c in _nonzero_columns(F, F.msub(lhs, rhs)):
                    a, rest = divmod(c, dj * dk)
                    b, cc = divmod(rest, dk)
                    failures.append(("associativity", (i, j, k),
                                     (A.labels[i][a], A.labels[j][b], A.labels[k][cc])))
    return CheckReport("graded algebra", not failures, failures)


def check_dN(Q: QDGA) -> CheckReport:
    """d^N = 0 for every composite that stays inside the window."""
    F = Q.F
    failures = []
    for n in range(Q.window - Q.N + 1):
        M = F.eye(Q.dims[n])
        for j in range(Q.N):
            M = F.matmul(Q.diff(n + j), M)
        for c in _nonzero_columns(F, M):
            failures.append(("d^N", n, Q.algebra.labels[n][c]))
    return CheckReport("d^N = 0", not failures, failures)


@dataclass
class LeibnizWitness:
    x: str
    x_degree: int
    y: str
    y_degree: int
    difference: list   # d(xy) - d(x)y - q^n x d(y) in the basis of degree n+s+1


def check_twisted_leibniz(Q: QDGA, q=None) -> CheckReport:
    """d(xy) = d(x) y + q^n x d(y) on basis pairs with n + s + 1 <= D."""
    F, A = Q.F, Q.algebra
    q = F.q if q is None else q
    failures = []
    for n in range(Q.window):
        for s in range(Q.window - n):
            dn, ds = Q.dims[n], Q.dims[s]
            if not (dn and ds):
                continue
            lhs = F.matmul(Q.diff(n + s), A.product(n, s))
            t1 = F.matmul(A.product(n + 1, s), F.kron(Q.diff(n), F.eye(ds)))
            t2 = F.matmul(A.product(n, s + 1), F.kron(F.eye(dn), Q.diff(s)))
            diff = F.msub(lhs, F.madd(t1, F.smul(F.pow(q, n), t2)))
            for c in _nonzero_columns(F, diff):
                a, b = divmod(c, ds)
                failures.append(LeibnizWitness(A.labels[n][a], n, A.labels[s][b], s,
                                               [F.pretty(v) for v in diff[:, c]]))
    return CheckReport("twisted Leibniz", not failures, failures)


def check_qdga(Q: QDGA) -> CheckReport:
    """All monoid conditions: assumption on q, algebra axioms, d^N = 0, twisted Leibniz."""
    F = Q.F
    failures = []
    if Q.N != F.N:
        failures.append(("N", f"algebra N={Q.N} but field N={F.N}"))
    rep = validate_assumption_A(F)
    if not rep.passed:
        failures.append(("assumption", rep.reason))
    for sub in (check_graded_algebra(Q.algebra), check_dN(Q), check_twisted_leibniz(Q)):
        failures.extend((sub.name, f) for f in sub.failures)
    return CheckReport("qdga", not failures, failures)


# ---------------------------------------------------------------------------
# examples


def _power_label(a: int) -> str:
    return "1" if a == 0 else ("t" if a == 1 else f"t^{a}")


def truncated_polynomial_algebra(F: Field, D: int) -> GradedAlgebra:
    """K[t]/(t^(D+1)) with deg t = 1, one basis vector per degree."""
    dims = {n: 1 for n in range(D + 1)}
    mu = {(i, j): F.eye(1) for i in range(D + 1) for j in range(D + 1 - i)}
    labels = {n: [_power_label(n)] for n in range(D + 1)}
    return GradedAlgebra(F, D, dims, F.vector([1]), mu, labels)


def qpoly_example(F: Field, D: int, q=None, *, check: bool = True) -> QDGA:
    """K[t] on 0..D with d(t^a) = [a]_q t^(a+1).

    With ``check=False`` the assumption on q is not enforced, so a failing
    instance can be built and handed to :func:`check_qdga`.
    """
    if check:
        rep = validate_assumption_A(F, q)
        if not rep.passed:
            raise AssumptionError(rep.reason)
    if D < F.N:
        raise ValueError(f"window D={D} must be at least N={F.N}")
    A = truncated_polynomial_algebra(F, D)
    d = {a: F.matrix([[q_int(F, a, q)]]) for a in range(D)}
    return QDGA(A, d)


def trivial_qdga(F: Field, D: int) -> QDGA:
    """K concentrated in degree 0 with d = 0, on the window 0..D."""
    dims = {0: 1}
    A = GradedAlgebra(F, D, dims, F.vector([1]), {(0, 0): F.eye(1)}, None)
    return QDGA(A, {})


def zero_qdga(F: Field, D: int) -> QDGA:
    A = GradedAlgebra(F, D, {}, [], {})
    return QDGA(A, {})


@dataclass
class TwistedTensorResult:
    qdga: QDGA
    dN: CheckReport
    leibniz: CheckReport


def twisted_tensor(Q1: QDGA, Q2: QDGA) -> TwistedTensorResult:
    """Tensor product of two algebras with N-differential.

    Product: (a (x) b)(a' (x) b') = q^(|b| |a'|) aa' (x) bb'.
    Differential: the twisted one of N-complexes.  This is a demonstration
    construction; the resulting twisted Leibniz check fails for N >= 3.
    """
    if Q1.F != Q2.F:
        raise ValueError("twisted tensor over different fields")
    F = Q1.F
    D = min(Q1.window, Q2.window)
    C = tensor(Q1.as_ncomplex(), Q2.as_ncomplex())
    labels_rs = tensor_labels(Q1.as_ncomplex(), Q2.as_ncomplex())
    dims = {n: C.dim(n) for n in range(D + 1)}
    A1, A2 = Q1.algebra, Q2.algebra
    index = {n: {lab: i for i, lab in enumerate(labels_rs.get(n, []))} for n in range(D + 1)}
    mu = {}
    for n in range(D + 1):
        for m in range(D + 1 - n):
            M = F.zeros(dims[n + m], dims[n] * dims[m])
            for ix, (r, i, s, j) in enumerate(labels_rs.get(n, [])):
                for iy, (r2, i2, s2, j2) in enumerate(labels_rs.get(m, [])):
                    e_i = F.eye(A1.dims[r])[:, i]
                    e_i2 = F.eye(A1.dims[r2])[:, i2]
                    e_j = F.eye(A2.dims[s])[:, j]
                    e_j2 = F.eye(A2.dims[s2])[:, j2]
                    left = A1.multiply(r, e_i, r2, e_i2)
                    right = A2.multiply(s, e_j, s2, e_j2)
                    coef = F.pow(F.q, s * r2)
                    col = ix * dims[m] + iy
                    for a in range(len(left)):
                        if F.is_zero(left[a]):
                            continue
                        for b in range(len(right)):
                            if F.is_zero(right[b]):
                                continue
                            row = index[n + m][(r + r2, a, s + s2, b)]
                            M[row, col] = F.add(M[row, col], F.mul(coef, F.mul(left[a], right[b])))
            mu[(n, m)] = M
    unit = F.kron(A1.unit.reshape(-1, 1), A2.unit.reshape(-1, 1))[:, 0] if dims[0] else []
    labels = {n: [f"{A1.labels[r][i]}(x){A2.labels[s][j]}" for (r, i, s, j) in labels_rs.get(n, [])]
              for n in range(D + 1)}
    A = GradedAlgebra(F, D, dims, unit, mu, labels)
    Q = QDGA(A, {n: C.diff(n) for n in range(D)}, Q1.N)
    return TwistedTensorResult(Q, check_dN(Q), check_twisted_leibniz(Q))
