"""N-complexes, graded maps between them, and amplitude cohomology.

An :class:`NComplex` is a finitely supported graded vector space with a
degree-one map ``d`` stored as one matrix per degree (shape
``dims[n+1] x dims[n]``).  Degrees outside ``[lo, hi]`` are zero.

Amplitude cohomology in degree ``n`` for ``1 <= k <= N-1`` is

    ker(d^k : C^n -> C^(n+k))  /  im(d^(N-k) : C^(n-N+k) -> C^n)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .coeff import Field
from .errors import NotHomomorphismError, ShapeError
from .exactla import Quotient, Subspace, image_basis, kernel_basis, quotient


def _freeze(M: np.ndarray) -> np.ndarray:
    M = M.copy()
    M.flags.writeable = False
    return M


class NComplex:
    """Cochain N-complex over ``F`` with ``N = F.N``."""

    def __init__(self, F: Field, dims: dict, d: Optional[dict] = None, *, check_shapes: bool = True):
        self.F = F
        self.N = F.N
        self.dims = {int(n): int(v) for n, v in dims.items() if int(v) > 0}
        if any(v < 0 for v in dims.values()):
            raise ShapeError("negative dimension")
        d = {} if d is None else d
        self.d = {}
        for n, M in d.items():
            n = int(n)
            M = np.asarray(M)
            if check_shapes and M.shape != (self.dim(n + 1), self.dim(n)):
                raise ShapeError(
                    f"d at degree {n} has shape {M.shape}, expected {(self.dim(n + 1), self.dim(n))}"
                )
            if M.size:
                self.d[n] = _freeze(M)

    @property
    def lo(self) -> int:
        return min(self.dims) if self.dims else 0

    @property
    def hi(self) -> int:
        return max(self.dims) if self.dims else -1

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def window(self) -> range:
        """Degrees ``[lo - N, hi + N]``; everything outside is zero."""
        if self.is_zero:
            return range(0)
        return range(self.lo - self.N, self.hi + self.N + 1)

    def support(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> np.ndarray:
        M = self.d.get(n)
        if M is None:
            return self.F.zeros(self.dim(n + 1), self.dim(n))
        return M

    def __repr__(self):
        dims = ", ".join(f"{n}:{self.dim(n)}" for n in self.support())
        return f"NComplex(N={self.N}, dims={{{dims}}}, F={self.F!r})"


@dataclass
class ValidationReport:
    passed: bool
    failures: list = field(default_factory=list)  # (degree, message)

    def __bool__(self):
        return self.passed


def validate_ncomplex(C: NComplex) -> ValidationReport:
    """Check matrix shapes and that every composite of N consecutive maps vanishes."""
    failures = []
    for n, M in C.d.items():
        if M.shape != (C.dim(n + 1), C.dim(n)):
            failures.append((n, f"shape {M.shape} != {(C.dim(n + 1), C.dim(n))}"))
    if failures:
        return ValidationReport(False, failures)
    for n in C.window():
        if C.dim(n) and not C.F.is_zero_matrix(d_power(C, n, C.N)):
            failures.append((n, f"d^{C.N} from degree {n} is nonzero"))
    return ValidationReport(not failures, failures)


def d_power(C: NComplex, n: int, k: int) -> np.ndarray:
    """Matrix of d^k : C^n -> C^(n+k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    F = C.F
    M = F.eye(C.dim(n))
    for j in range(k):
        M = F.matmul(C.diff(n + j), M)
    return M


# ---------------------------------------------------------------------------
# graded maps


class GradedMap:
    """Degree-``shift`` linear map: ``mats[n]`` has shape ``target(n+shift) x source(n)``."""

    def __init__(self, F: Field, source_dims: dict, target_dims: dict, shift: int = 0,
                 mats: Optional[dict] = None, *, check_shapes: bool = True):
        self.F = F
        self.source_dims = {int(n): int(v) for n, v in source_dims.items() if int(v) > 0}
        self.target_dims = {int(n): int(v) for n, v in target_dims.items() if int(v) > 0}
        self.shift = shift
        self.mats = {}
        for n, M in (mats or {}).items():
            n = int(n)
            M = np.asarray(M)
            expect = (self.target_dims.get(n + shift, 0), self.source_dims.get(n, 0))
            if check_shapes and M.shape != expect:
                raise ShapeError(f"map at degree {n} has shape {M.shape}, expected {expect}")
            if M.size:
                self.mats[n] = _freeze(M)

    def matrix(self, n: int) -> np.ndarray:
        M = self.mats.get(n)
        if M is None:
            return self.F.zeros(self.target_dims.get(n + self.shift, 0), self.source_dims.get(n, 0))
        return M

    def degrees(self) -> list:
        src = set(self.source_dims)
        tgt = {n - self.shift for n in self.target_dims}
        return sorted(src & tgt)

    def apply(self, n: int, v: np.ndarray) -> np.ndarray:
        return self.F.matvec(self.matrix(n), v)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``."""
        F = self.F
        mats = {}
        for n in other.source_dims:
            mats[n] = F.matmul(self.matrix(n + other.shift), other.matrix(n))
        return GradedMap(F, other.source_dims, self.target_dims, self.shift + other.shift, mats)

    def equals(self, other: "GradedMap") -> bool:
        if self.shift != other.shift:
            return False
        degs = set(self.source_dims) | set(other.source_dims)
        for n in degs:
            A, B = self.matrix(n), other.matrix(n)
            if A.shape != B.shape:
                return False
            if not self.F.is_zero_matrix(self.F.msub(A, B)):
                return False
        return True

    def __repr__(self):
        return f"GradedMap(shift={self.shift}, degrees={sorted(self.mats)})"


def identity_map(C: NComplex) -> GradedMap:
    return GradedMap(C.F, C.dims, C.dims, 0, {n: C.F.eye(C.dim(n)) for n in C.dims})


def zero_map(C: NComplex, D: NComplex) -> GradedMap:
    return GradedMap(C.F, C.dims, D.dims, 0, {})


def is_homomorphism(f: GradedMap, C: NComplex, D: NComplex) -> bool:
    """True iff ``f`` is degree 0 and ``f d = d f`` in every degree."""
    if f.shift != 0:
        return False
    for n in set(C.dims) | set(D.dims):
        if f.matrix(n).shape != (D.dim(n), C.dim(n)):
            raise ShapeError(f"map at degree {n} does not fit the complexes")
    F = C.F
    for n in C.window():
        lhs = F.matmul(f.matrix(n + 1), C.diff(n))
        rhs = F.matmul(D.diff(n), f.matrix(n))
        if not F.is_zero_matrix(F.msub(lhs, rhs)):
            return False
    return True


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologyPiece:
    """H^n_(k) as ``kernel / image`` with deterministic representatives."""

    degree: int
    k: int
    kernel: Subspace
    image: Subspace
    q: Quotient

    @property
    def dim(self) -> int:
        return self.q.dim

    @property
    def reps(self) -> np.ndarray:
        return self.q.reps

    def project(self, v: np.ndarray) -> np.ndarray:
        """Class of a cocycle ``v`` (vector in C^n with d^k v = 0)."""
        return self.q.project(v)

    def project_matrix(self, V: np.ndarray) -> np.ndarray:
        return self.q.project_matrix(V)


class CohomologyTable:
    """Lazily computed H^n_(k)(C) for all k in 1..N-1 and all degrees."""

    def __init__(self, C: NComplex):
        self.C = C
        self._cache: dict = {}

    def piece(self, k: int, n: int) -> CohomologyPiece:
        C = self.C
        if not 1 <= k <= C.N - 1:
            raise ValueError(f"k must lie in 1..{C.N - 1}, got {k}")
        key = (k, n)
        if key not in self._cache:
            F = C.F
            ker = kernel_basis(F, d_power(C, n, k))
            im = image_basis(F, d_power(C, n - C.N + k, C.N - k))
            self._cache[key] = CohomologyPiece(n, k, ker, im, quotient(F, ker, im))
        return self._cache[key]

    def dim(self, k: int, n: int) -> int:
        if not self.C.dim(n):
            return 0
        return self.piece(k, n).dim

    def dims(self, k: int) -> dict:
        return {n: self.dim(k, n) for n in self.C.support()}

    def graded_dims(self, k: int) -> dict:
        """Nonzero dimensions only, keyed by degree (used as GradedMap dims)."""
        return {n: d for n, d in self.dims(k).items() if d}


def amplitude_cohomology(C: NComplex, k: int, table: Optional[CohomologyTable] = None) -> dict:
    """``{degree: CohomologyPiece}`` over the support of ``C``."""
    if not 1 <= k <= C.N - 1:
        raise ValueError(f"k must lie in 1..{C.N - 1}, got {k}")
    table = table or CohomologyTable(C)
    return {n: table.piece(k, n) for n in C.support()}


def cohomology_dims(C: NComplex) -> dict:
    """``{k: {n: dim H^n_(k)}}``."""
    T = CohomologyTable(C)
    return {k: T.dims(k) for k in range(1, C.N)}


def induced_on_cohomology(f: GradedMap, C: NComplex, D: NComplex, k: int,
                          TC: Optional[CohomologyTable] = None,
                          TD: Optional[CohomologyTable] = None) -> GradedMap:
    """Matrix of ``[x] -> [f x]`` on H_(k) in the deterministic quotient bases."""
    if not is_homomorphism(f, C, D):
        raise NotHomomorphismError("map does not commute with d")
    TC = TC or CohomologyTable(C)
    TD = TD or CohomologyTable(D)
    F = C.F
    mats = {}
    for n in C.support():
        src = TC.piece(k, n)
        if not src.dim or not D.dim(n):
            continue
        tgt = TD.piece(k, n)
        mats[n] = tgt.project_matrix(F.matmul(f.matrix(n), src.reps))
    return GradedMap(F, TC.graded_dims(k), TD.graded_dims(k), 0, mats)


# ---------------------------------------------------------------------------
# constructions


def direct_sum(C1: NComplex, C2: NComplex):
    """Return ``(C1 + C2, inc1, inc2, proj1, proj2)`` with block-diagonal d."""
    if C1.F != C2.F:
        raise ValueError("direct sum of complexes over different fields")
    F = C1.F
    degs = sorted(set(C1.dims) | set(C2.dims))
    dims = {n: C1.dim(n) + C2.dim(n) for n in degs}
    d = {}
    for n in degs:
        if dims.get(n + 1, 0) == 0:
            continue
        M = F.zeros(dims[n + 1], dims[n])
        a1, b1 = C1.dim(n + 1), C1.dim(n)
        M[:a1, :b1] = C1.diff(n)
        M[a1:, b1:] = C2.diff(n)
        d[n] = M
    S = NComplex(F, dims, d)
    inc1, inc2, pr1, pr2 = {}, {}, {}, {}
    for n in degs:
        a, b = C1.dim(n), C2.dim(n)
        E = F.eye(a + b)
        inc1[n], inc2[n] = E[:, :a], E[:, a:]
        pr1[n], pr2[n] = E[:a, :], E[a:, :]
    return (
        S,
        GradedMap(F, C1.dims, S.dims, 0, inc1),
        GradedMap(F, C2.dims, S.dims, 0, inc2),
        GradedMap(F, S.dims, C1.dims, 0, pr1),
        GradedMap(F, S.dims, C2.dims, 0, pr2),
    )


def staircase(F: Field, start: int = 0, length: Optional[int] = None) -> NComplex:
    """K -> K -> ... -> K (identity maps) in degrees start..start+length-1.

    ``length`` defaults to N, giving the contractible staircase S(N).
    """
    length = F.N if length is None else length
    dims = {start + i: 1 for i in range(length)}
    d = {start + i: F.eye(1) for i in range(length - 1)}
    return NComplex(F, dims, d)


def zero_complex(F: Field) -> NComplex:
    return NComplex(F, {}, {})


def conjugate(C: NComplex, g: dict) -> NComplex:
    """Complex with d'_n = g_(n+1) d_n g_n^-1 (``g`` given together with inverses)."""
    F = C.F
    d = {}
    for n in C.d:
        gn, gn_inv = g[n]
        gn1, _ = g[n + 1]
        d[n] = F.matmul(F.matmul(gn1, C.diff(n)), gn_inv)
    return NComplex(F, C.dims, d)


def hom_space_basis(C: NComplex, D: NComplex) -> list:
    """Basis of degree-0 homomorphisms C -> D, each as ``{degree: matrix}``."""
    F = C.F
    degs = sorted(set(C.dims) & set(D.dims))
    offsets, total = {}, 0
    for n in degs:
        offsets[n] = total
        total += D.dim(n) * C.dim(n)
    if total == 0:
        return []
    rows = []

    def var(n, i, j):
        return offsets[n] + i * C.dim(n) + j

    # f_(n+1) d_n - d'_n f_n = 0, entrywise
    for n in range(C.lo - 1, C.hi + 1):
        for i in range(D.dim(n + 1)):
            for j in range(C.dim(n)):
                row = F.zeros(1, total)[0]
                nonzero = False
                if n + 1 in offsets:
                    dn = C.diff(n)
                    for t in range(C.dim(n + 1)):
                        if not F.is_zero(dn[t, j]):
                            row[var(n + 1, i, t)] = F.add(row[var(n + 1, i, t)], dn[t, j])
                            nonzero = True
                if n in offsets:
                    dD = D.diff(n)
                    for t in range(D.dim(n)):
                        if not F.is_zero(dD[i, t]):
                            row[var(n, t, j)] = F.sub(row[var(n, t, j)], dD[i, t])
                            nonzero = True
                if nonzero:
                    rows.append(row)
    if rows:
        A = np.stack(rows)
    else:
        A = F.zeros(0, total)
    K = kernel_basis(F, A).basis
    basis = []
    for c in range(K.shape[1]):
        mats = {}
        for n in degs:
            blk = K[offsets[n]:offsets[n] + D.dim(n) * C.dim(n), c]
            mats[n] = blk.reshape(D.dim(n), C.dim(n))
        basis.append(mats)
    return basis


def homomorphism_from_mats(C: NComplex, D: NComplex, mats: dict) -> GradedMap:
    return GradedMap(C.F, C.dims, D.dims, 0, mats)


def degrees_union(*complexes: NComplex) -> Iterable[int]:
    lo = min((c.lo - c.N for c in complexes if not c.is_zero), default=0)
    hi = max((c.hi + c.N for c in complexes if not c.is_zero), default=-1)
    return range(lo, hi + 1)
