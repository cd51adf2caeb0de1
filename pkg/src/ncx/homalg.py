"""Exact hexagons of amplitude cohomology.

Two families are checked degreewise:

* the internal hexagon of one complex, built from the maps [i]^l (induced by
  ker d^m -> ker d^(m+l)) and [d]^m (induced by x -> d^m x);
* the hexagon of a short exact sequence 0 -> C1 -> C2 -> C3 -> 0, built from
  alpha_*, beta_* and the connecting map H_(k)(C3) -> H_(N-k)(C1).

The connecting map raises degree by k: a class in H^n_(k)(C3) is lifted to
C2^n, pushed by d^k into C2^(n+k), and pulled back along alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ShapeError
from .exactla import image_basis, kernel_basis, rank, solve, Subspace
from .ncomplex import (
    CohomologyTable,
    GradedMap,
    NComplex,
    ValidationReport,
    d_power,
    degrees_union,
    is_homomorphism,
)


def _check_range(name: str, value: int, lo: int, hi: int) -> None:
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value} outside {lo}..{hi}")


def induced_inclusion(C: NComplex, m: int, l: int, T: Optional[CohomologyTable] = None) -> GradedMap:
    """[i]^l : H_(m) -> H_(m+l), degree 0."""
    _check_range("m", m, 1, C.N - 1)
    _check_range("m+l", m + l, m, C.N - 1)
    T = T or CohomologyTable(C)
    mats = {}
    for n in C.support():
        if not C.dim(n):
            continue
        src, tgt = T.piece(m, n), T.piece(m + l, n)
        if src.dim:
            mats[n] = tgt.project_matrix(src.reps)
    return GradedMap(C.F, T.graded_dims(m), T.graded_dims(m + l), 0, mats)


def induced_d(C: NComplex, k: int, m: int, T: Optional[CohomologyTable] = None) -> GradedMap:
    """[d]^m : H_(k) -> H_(k-m), degree m."""
    _check_range("k", k, 1, C.N - 1)
    _check_range("m", m, 1, k - 1)
    T = T or CohomologyTable(C)
    F = C.F
    mats = {}
    for n in C.support():
        if not C.dim(n) or not C.dim(n + m):
            continue
        src = T.piece(k, n)
        if src.dim:
            tgt = T.piece(k - m, n + m)
            mats[n] = tgt.project_matrix(F.matmul(d_power(C, n, m), src.reps))
    return GradedMap(F, T.graded_dims(k), T.graded_dims(k - m), m, mats)


@dataclass
class NodeStatus:
    node: str
    degree: int
    composite_zero: bool
    dim_kernel: int
    dim_image: int

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.dim_kernel == self.dim_image


@dataclass
class HexagonReport:
    nodes: list               # node labels, in cycle order
    maps: list                # GradedMap per edge; maps[i] leaves nodes[i]
    statuses: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.statuses)

    def failures(self) -> list:
        return [s for s in self.statuses if not s.exact]

    def __bool__(self):
        return self.exact


def _check_cycle(F, node_labels: list, node_dims: list, maps: list, window) -> HexagonReport:
    """At each node X and degree n: g o f = 0 and dim ker g_n = rank f, with
    f the incoming map and g the outgoing one."""
    report = HexagonReport(node_labels, maps)
    L = len(maps)
    for i in range(L):
        f = maps[i - 1]      # into node i
        g = maps[i]          # out of node i
        for n in window:
            dimX = node_dims[i].get(n, 0)
            fm = f.matrix(n - f.shift)
            gm = g.matrix(n)
            if fm.shape[0] != dimX or gm.shape[1] != dimX:
                raise ShapeError(f"hexagon maps do not meet at node {node_labels[i]}, degree {n}")
            comp = F.matmul(gm, fm)
            zero = F.is_zero_matrix(comp)
            dker = dimX - rank(F, gm)
            dim_im = rank(F, fm)
            report.statuses.append(NodeStatus(node_labels[i], n, zero, dker, dim_im))
    return report


def internal_hexagon(C: NComplex, l: int, m: int, T: Optional[CohomologyTable] = None) -> HexagonReport:
    N = C.N
    if l < 1 or m < 1 or l + m > N - 1:
        raise ValueError(f"need l, m >= 1 and l + m <= {N - 1}, got l={l}, m={m}")
    T = T or CohomologyTable(C)
    ks = [m, l + m, l, N - m, N - l - m, N - l]
    maps = [
        induced_inclusion(C, m, l, T),
        induced_d(C, l + m, m, T),
        induced_inclusion(C, l, N - l - m, T),
        induced_d(C, N - m, l, T),
        induced_inclusion(C, N - l - m, m, T),
        induced_d(C, N - l, N - l - m, T),
    ]
    labels = [f"H_({k})" for k in ks]
    dims = [T.graded_dims(k) for k in ks]
    return _check_cycle(C.F, labels, dims, maps, C.window())


# ---------------------------------------------------------------------------
# short exact sequences


@dataclass
class ShortExactSequence:
    C1: NComplex
    C2: NComplex
    C3: NComplex
    alpha: GradedMap
    beta: GradedMap

    def __post_init__(self):
        if not (self.C1.F == self.C2.F == self.C3.F):
            raise ValueError("short exact sequence over mixed fields")

    @property
    def F(self):
        return self.C2.F

    @property
    def N(self) -> int:
        return self.C2.N

    def window(self):
        return degrees_union(self.C1, self.C2, self.C3)


def validate_ses(s: ShortExactSequence) -> ValidationReport:
    F = s.F
    failures = []
    for name, f, src, tgt in (("alpha", s.alpha, s.C1, s.C2), ("beta", s.beta, s.C2, s.C3)):
        try:
            if not is_homomorphism(f, src, tgt):
                failures.append((None, f"{name} does not commute with d"))
        except ShapeError as exc:
            failures.append((None, f"{name}: {exc}"))
    if failures:
        return ValidationReport(False, failures)
    for n in s.window():
        a, b = s.alpha.matrix(n), s.beta.matrix(n)
        if rank(F, a) != s.C1.dim(n):
            failures.append((n, "alpha not injective"))
        if rank(F, b) != s.C3.dim(n):
            failures.append((n, "beta not surjective"))
        if s.C2.dim(n):
            if not F.is_zero_matrix(F.matmul(b, a)):
                failures.append((n, "im alpha not inside ker beta"))
            else:
                kb = kernel_basis(F, b)
                # im alpha inside ker beta; equal iff dimensions match
                if kb.dim != rank(F, a):
                    failures.append((n, "ker beta larger than im alpha"))
    return ValidationReport(not failures, failures)


def induced_ses_map(f: GradedMap, C: NComplex, D: NComplex, k: int,
                    TC: CohomologyTable, TD: CohomologyTable) -> GradedMap:
    F = C.F
    mats = {}
    for n in C.support():
        if not C.dim(n) or not D.dim(n):
            continue
        src = TC.piece(k, n)
        if src.dim:
            mats[n] = TD.piece(k, n).project_matrix(F.matmul(f.matrix(n), src.reps))
    return GradedMap(F, TC.graded_dims(k), TD.graded_dims(k), 0, mats)


def connecting_lift(s: ShortExactSequence, k: int, n: int, x3: np.ndarray,
                    x2_shift: Optional[np.ndarray] = None) -> np.ndarray:
    """Zig-zag for one cocycle x3 in C3^n; returns x1 in C1^(n+k).

    ``x2_shift`` (an element of ker beta_n) is added to the lift, to test that
    the resulting class does not depend on the choice.
    """
    F = s.F
    x2 = solve(F, s.beta.matrix(n), x3)
    if x2 is None:
        raise ValueError(f"beta not surjective at degree {n}")
    if x2_shift is not None:
        x2 = F.madd(x2, x2_shift)
    y = F.matvec(d_power(s.C2, n, k), x2)
    x1 = solve(F, s.alpha.matrix(n + k), y)
    if x1 is None:
        raise ArithmeticError("d^k of the lift is not in the image of alpha")
    if not F.is_zero_matrix(F.matvec(d_power(s.C1, n + k, s.N - k), x1).reshape(-1, 1)):
        raise ArithmeticError("pulled-back element is not a cocycle")
    return x1


def connecting(s: ShortExactSequence, k: int, T1: Optional[CohomologyTable] = None,
               T3: Optional[CohomologyTable] = None) -> GradedMap:
    """Connecting map H_(k)(C3) -> H_(N-k)(C1), degree k."""
    _check_range("k", k, 1, s.N - 1)
    report = validate_ses(s)
    if not report:
        raise ValueError(f"not a short exact sequence: {report.failures}")
    F = s.F
    T1 = T1 or CohomologyTable(s.C1)
    T3 = T3 or CohomologyTable(s.C3)
    mats = {}
    for n in s.C3.support():
        if not s.C3.dim(n) or not s.C1.dim(n + k):
            continue
        src = T3.piece(k, n)
        if not src.dim:
            continue
        tgt = T1.piece(s.N - k, n + k)
        cols = [connecting_lift(s, k, n, src.reps[:, j]) for j in range(src.dim)]
        V = np.stack(cols, axis=1) if cols else F.zeros(s.C1.dim(n + k), 0)
        mats[n] = tgt.project_matrix(V)
    return GradedMap(F, T3.graded_dims(k), T1.graded_dims(s.N - k), k, mats)


def snake_hexagon(s: ShortExactSequence, n: int) -> HexagonReport:
    N = s.N
    _check_range("n", n, 1, N - 1)
    report = validate_ses(s)
    if not report:
        raise ValueError(f"not a short exact sequence: {report.failures}")
    T1, T2, T3 = CohomologyTable(s.C1), CohomologyTable(s.C2), CohomologyTable(s.C3)
    m = N - n
    maps = [
        induced_ses_map(s.alpha, s.C1, s.C2, n, T1, T2),
        induced_ses_map(s.beta, s.C2, s.C3, n, T2, T3),
        connecting(s, n, T1, T3),
        induced_ses_map(s.alpha, s.C1, s.C2, m, T1, T2),
        induced_ses_map(s.beta, s.C2, s.C3, m, T2, T3),
        connecting(s, m, T1, T3),
    ]
    labels = [f"H_({n})(C1)", f"H_({n})(C2)", f"H_({n})(C3)",
              f"H_({m})(C1)", f"H_({m})(C2)", f"H_({m})(C3)"]
    dims = [T1.graded_dims(n), T2.graded_dims(n), T3.graded_dims(n),
            T1.graded_dims(m), T2.graded_dims(m), T3.graded_dims(m)]
    return _check_cycle(s.F, labels, dims, maps, s.window())


def kernel_of_beta(s: ShortExactSequence, n: int) -> Subspace:
    return kernel_basis(s.F, s.beta.matrix(n))


def image_of_d(C: NComplex, n: int, k: int) -> Subspace:
    """im(d^k : C^(n-k) -> C^n)."""
    return image_basis(C.F, d_power(C, n - k, k))
