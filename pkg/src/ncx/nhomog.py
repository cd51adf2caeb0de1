"""The N-homogeneous algebra with fully symmetrized relations, and A(R^n).

A is generated by t_1..t_n subject to, for every multiset {l_1..l_N},

    sum over permutations p of t_{l_p(1)} ... t_{l_p(N)} = 0.

A(R^n) = A (x) (polynomials in x_1..x_n, degree <= D_P), with

    d(a (x) f) = (-1)^deg(a) * sum_l  a t_l (x) df/dx_l.

Smooth functions are replaced by truncated polynomials; d consumes one
polynomial degree per application, so the truncation never feeds back.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coeff import Field, PrimeField
from .exactla import rref
from .qdga import GradedAlgebra, QDGA


def _word_label(w: tuple) -> str:
    if not w:
        return "1"
    return "".join(f"t{l + 1}" for l in w)


@dataclass
class NHomPresentation:
    n: int
    N: int
    relations: list     # (multiset, {word: integer coefficient})

    def relation_vector(self, idx: int, words: list) -> list:
        coeffs = self.relations[idx][1]
        return [coeffs.get(w, 0) for w in words]


def presentation(n: int, N: int) -> NHomPresentation:
    rels = []
    for ms in itertools.combinations_with_replacement(range(n), N):
        mult = math.prod(math.factorial(ms.count(l)) for l in set(ms))
        coeffs = {w: mult for w in sorted(set(itertools.permutations(ms)))}
        rels.append((ms, coeffs))
    return NHomPresentation(n, N, rels)


class NHomogeneousAlgebra:
    """Degreewise quotient of the free algebra, with normal-word bases.

    In degree m the relation space is spanned by u r v (|u| + N + |v| = m).
    Row reduction with words in *descending* lexicographic order eliminates
    the largest words first, so the surviving basis words are the
    lexicographically smallest ones.
    """

    def __init__(self, F: Field, n: int, N: int, max_degree: int):
        if isinstance(F, PrimeField) and F.p <= N:
            raise ValueError(f"characteristic {F.p} too small for degree-{N} symmetrized relations")
        if max_degree < N:
            raise ValueError("max_degree must be at least N")
        self.F, self.n, self.N, self.max_degree = F, n, N, max_degree
        self.pres = presentation(n, N)
        self.words = {m: list(itertools.product(range(n), repeat=m)) for m in range(max_degree + 1)}
        self.normal: dict = {}
        self._reduce: dict = {}        # m -> matrix dim A_m x n^m
        for m in range(max_degree + 1):
            self._build_degree(m)
        self.algebra = self._multiplication()

    def _build_degree(self, m: int) -> None:
        F = self.F
        words = self.words[m]
        index = {w: i for i, w in enumerate(words)}
        if m < self.N:
            self.normal[m] = list(words)
            self._reduce[m] = F.eye(len(words))
            return
        desc = sorted(words, reverse=True)
        col = {w: i for i, w in enumerate(desc)}
        rows = []
        for left in range(m - self.N + 1):
            right = m - self.N - left
            for u in itertools.product(range(self.n), repeat=left):
                for v in itertools.product(range(self.n), repeat=right):
                    for _, coeffs in self.pres.relations:
                        row = [0] * len(words)
                        for w, c in coeffs.items():
                            row[col[u + w + v]] += c
                        rows.append(row)
        R, r, piv = rref(F, F.matrix(rows))
        pivset = set(piv)
        free_desc = [c for c in range(len(desc)) if c not in pivset]
        normal = sorted(desc[c] for c in free_desc)
        nindex = {w: i for i, w in enumerate(normal)}
        red = F.zeros(len(normal), len(words))
        for w in normal:
            red[nindex[w], index[w]] = F.one
        for i, pc in enumerate(piv):
            w = desc[pc]
            for c in free_desc:
                if not F.is_zero(R[i, c]):
                    red[nindex[desc[c]], index[w]] = F.neg(R[i, c])
        self.normal[m] = normal
        self._reduce[m] = red

    def dim(self, m: int) -> int:
        return len(self.normal[m])

    def dims(self) -> dict:
        return {m: self.dim(m) for m in range(self.max_degree + 1)}

    def reduce_word(self, w: tuple) -> np.ndarray:
        """Coordinates of a word in the normal basis of its degree."""
        j = 0
        for l in w:
            j = j * self.n + l
        return self._reduce[len(w)][:, j]

    def _multiplication(self) -> GradedAlgebra:
        F = self.F
        D = self.max_degree
        mu = {}
        for i in range(D + 1):
            for j in range(D + 1 - i):
                M = F.zeros(self.dim(i + j), self.dim(i) * self.dim(j))
                for a, u in enumerate(self.normal[i]):
                    for b, v in enumerate(self.normal[j]):
                        M[:, a * self.dim(j) + b] = self.reduce_word(u + v)
                mu[(i, j)] = M
        labels = {m: [_word_label(w) for w in self.normal[m]] for m in range(D + 1)}
        return GradedAlgebra(F, D, self.dims(), F.vector([1]), mu, labels)

    def times_generator(self, m: int, a: int, l: int) -> np.ndarray:
        """Normal-basis coordinates of (basis word a of degree m) * t_l."""
        return self.reduce_word(self.normal[m][a] + (l,))


def build_n_homogeneous(F: Field, n: int, N: int, max_degree: int) -> NHomogeneousAlgebra:
    return NHomogeneousAlgebra(F, n, N, max_degree)


# ---------------------------------------------------------------------------
# A(R^n)


def monomials(n: int, max_degree: int) -> list:
    """Exponent tuples ordered by total degree, then x_1-heavy first."""
    out = []
    for deg in range(max_degree + 1):
        level = [e for e in itertools.product(range(deg + 1), repeat=n) if sum(e) == deg]
        out.extend(sorted(level, reverse=True))
    return out


def _mono_label(e: tuple) -> str:
    parts = []
    for l, k in enumerate(e):
        if k == 1:
            parts.append(f"x{l + 1}")
        elif k > 1:
            parts.append(f"x{l + 1}^{k}")
    return "*".join(parts) or "1"


class WindowError(ValueError):
    pass


class AlgebraRn:
    """Elements are dicts ``{(alg_degree, alg_index, exponents): scalar}``."""

    def __init__(self, A: NHomogeneousAlgebra, max_poly_degree: int):
        self.A = A
        self.F = A.F
        self.n = A.n
        self.N = A.N
        self.max_alg_degree = A.max_degree
        self.max_poly_degree = max_poly_degree
        self.monos = monomials(self.n, max_poly_degree)

    # basis ------------------------------------------------------------------
    def basis(self, alg_degree: Optional[int] = None) -> list:
        """Basis keys in scan order: polynomial part first, then algebra part."""
        degs = range(self.max_alg_degree + 1) if alg_degree is None else [alg_degree]
        return [(m, a, e) for e in self.monos for m in degs for a in range(self.A.dim(m))]

    def label(self, key) -> str:
        m, a, e = key
        return f"{_word_label(self.A.normal[m][a])}(x){_mono_label(e)}"

    def element(self, key, coeff=None) -> dict:
        return {key: self.F.one if coeff is None else coeff}

    # arithmetic ---------------------------------------------------------------
    def _add_into(self, out: dict, key, c) -> None:
        F = self.F
        v = F.add(out.get(key, F.zero), c)
        if F.is_zero(v):
            out.pop(key, None)
        else:
            out[key] = v

    def add(self, x: dict, y: dict) -> dict:
        out = dict(x)
        for k, c in y.items():
            self._add_into(out, k, c)
        return out

    def scale(self, s, x: dict) -> dict:
        F = self.F
        return {k: F.mul(s, c) for k, c in x.items() if not F.is_zero(F.mul(s, c))}

    def sub(self, x: dict, y: dict) -> dict:
        return self.add(x, self.scale(self.F.neg(self.F.one), y))

    def mul(self, x: dict, y: dict) -> dict:
        F, A = self.F, self.A
        out: dict = {}
        for (i, a, e), c in x.items():
            for (j, b, f), c2 in y.items():
                g = tuple(p + r for p, r in zip(e, f))
                if i + j > self.max_alg_degree or sum(g) > self.max_poly_degree:
                    raise WindowError("product leaves the window")
                coords = A.algebra.product(i, j)[:, a * A.dim(j) + b]
                cc = F.mul(c, c2)
                for t, v in enumerate(coords):
                    if not F.is_zero(v):
                        self._add_into(out, (i + j, t, g), F.mul(cc, v))
        return out

    def d(self, x: dict) -> dict:
        F, A = self.F, self.A
        out: dict = {}
        for (m, a, e), c in x.items():
            if not any(e):
                continue
            if m + 1 > self.max_alg_degree:
                raise WindowError("differential leaves the algebra window")
            sign = F.one if m % 2 == 0 else F.neg(F.one)
            for l in range(self.n):
                if e[l] == 0:
                    continue
                coords = A.times_generator(m, a, l)
                e2 = e[:l] + (e[l] - 1,) + e[l + 1:]
                cc = F.mul(F.mul(sign, c), F.from_int(e[l]))
                for t, v in enumerate(coords):
                    if not F.is_zero(v):
                        self._add_into(out, (m + 1, t, e2), F.mul(cc, v))
        return out

    def d_power(self, x: dict, k: int) -> dict:
        for _ in range(k):
            x = self.d(x)
        return x

    # export ---------------------------------------------------------------------
    def as_qdga(self) -> QDGA:
        """Single grading by algebra degree; products beyond D_P are dropped.

        Dropping high polynomial degrees is not compatible with d, so twisted
        Leibniz witnesses of the exported object can include truncation
        artifacts; :func:`find_leibniz_counterexample` avoids them.
        """
        F, A = self.F, self.A
        D = self.max_alg_degree
        keys = {m: [(m, a, e) for a in range(A.dim(m)) for e in self.monos] for m in range(D + 1)}
        index = {m: {k: i for i, k in enumerate(keys[m])} for m in keys}
        dims = {m: len(keys[m]) for m in keys}
        mu = {}
        for i in range(D + 1):
            for j in range(D + 1 - i):
                M = F.zeros(dims[i + j], dims[i] * dims[j])
                for ix, (_, a, e) in enumerate(keys[i]):
                    for iy, (_, b, f) in enumerate(keys[j]):
                        g = tuple(p + r for p, r in zip(e, f))
                        if sum(g) > self.max_poly_degree:
                            continue
                        coords = A.algebra.product(i, j)[:, a * A.dim(j) + b]
                        for t, v in enumerate(coords):
                            if not F.is_zero(v):
                                M[index[i + j][(i + j, t, g)], ix * dims[j] + iy] = v
                mu[(i, j)] = M
        d = {}
        for m in range(D):
            M = F.zeros(dims[m + 1], dims[m])
            for ix, key in enumerate(keys[m]):
                for k2, v in self.d({key: F.one}).items():
                    M[index[m + 1][k2], ix] = v
            d[m] = M
        unit = F.zeros(dims[0], 1)[:, 0]
        unit[index[0][(0, 0, (0,) * self.n)]] = F.one
        labels = {m: [self.label(k) for k in keys[m]] for m in keys}
        return QDGA(GradedAlgebra(F, D, dims, unit, mu, labels), d, self.N)


def build_A_Rn(F: Field, n: int, N: int, max_alg_degree: int, max_poly_degree: int) -> AlgebraRn:
    return AlgebraRn(build_n_homogeneous(F, n, N, max_alg_degree), max_poly_degree)


@dataclass
class DNReport:
    passed: bool
    checked: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def check_dN_zero(R: AlgebraRn) -> DNReport:
    """Apply d N times to every basis element a (x) f with deg a + N <= D_A."""
    failures = []
    checked = 0
    for key in R.basis():
        m = key[0]
        if m + R.N > R.max_alg_degree:
            continue
        checked += 1
        y = R.d_power({key: R.F.one}, R.N)
        if y:
            failures.append(R.label(key))
    return DNReport(not failures, checked, failures)


@dataclass
class LeibnizCounterexample:
    x: str
    y: str
    lhs: dict
    rhs: dict


def find_leibniz_counterexample(R: AlgebraRn, q=None, *, degree0_only: bool = False
                                ) -> Optional[LeibnizCounterexample]:
    """First basis pair (x, y) with d(xy) != d(x) y + q^deg(x) x d(y), or None.

    Only pairs whose products stay inside both windows are scanned.
    """
    F = R.F
    q = F.q if q is None else q
    keys = R.basis(0) if degree0_only else R.basis()
    for kx in keys:
        for ky in keys:
            (i, _, e), (j, _, f) = kx, ky
            if i + j + 1 > R.max_alg_degree or sum(e) + sum(f) > R.max_poly_degree:
                continue
            x, y = {kx: F.one}, {ky: F.one}
            lhs = R.d(R.mul(x, y))
            rhs = R.add(R.mul(R.d(x), y), R.scale(F.pow(q, i), R.mul(x, R.d(y))))
            if R.sub(lhs, rhs):
                fmt = lambda z: {R.label(k): F.pretty(c) for k, c in sorted(z.items())}
                return LeibnizCounterexample(R.label(kx), R.label(ky), fmt(lhs), fmt(rhs))
    return None
