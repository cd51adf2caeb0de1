"""Random N-complexes, homomorphisms and short exact sequences.

Every finite N-complex over a field is a sum of staircase segments
K -> K -> ... -> K of length at most N.  Random complexes are therefore built
as a random sum of segments followed by an independent random change of
basis in each degree, which reaches every isomorphism class.
"""

from __future__ import annotations

import numpy as np

from .coeff import Field
from .exactla import inverse, rank
from .ncomplex import GradedMap, NComplex, conjugate, direct_sum, hom_space_basis


def random_invertible(F: Field, rng: np.random.Generator, n: int):
    """Return ``(g, g^-1)``."""
    while True:
        g = F.random_matrix(rng, n, n)
        if rank(F, g) == n:
            return g, inverse(F, g)


def random_segments(N: int, rng: np.random.Generator, n_degrees: int = 5, max_dim: int = 3):
    """List of ``(start, length)`` with per-degree multiplicity <= ``max_dim``."""
    load = [0] * n_degrees
    segs = []
    for _ in range(rng.integers(0, n_degrees * max_dim + 1)):
        start = int(rng.integers(0, n_degrees))
        length = int(rng.integers(1, min(N, n_degrees - start) + 1))
        if all(load[start + i] < max_dim for i in range(length)):
            for i in range(length):
                load[start + i] += 1
            segs.append((start, length))
    return sorted(segs)


def segments_complex(F: Field, segs: list, offset: int = 0):
    """Block-diagonal sum of staircases; returns ``(C, positions)`` where
    ``positions[s][i]`` is the basis index of segment ``s``'s term at its i-th degree."""
    dims: dict = {}
    positions = []
    for start, length in segs:
        pos = []
        for i in range(length):
            n = start + i + offset
            pos.append(dims.get(n, 0))
            dims[n] = dims.get(n, 0) + 1
        positions.append(pos)
    d = {}
    for n in dims:
        if n + 1 in dims:
            d[n] = F.zeros(dims[n + 1], dims[n])
    for (start, length), pos in zip(segs, positions):
        for i in range(length - 1):
            n = start + i + offset
            d[n][pos[i + 1], pos[i]] = F.one
    return NComplex(F, dims, d), positions


def random_basis_change(F: Field, rng: np.random.Generator, dims: dict) -> dict:
    return {n: random_invertible(F, rng, v) for n, v in dims.items()}


def random_ncomplex(F: Field, rng: np.random.Generator, n_degrees: int = 5, max_dim: int = 3,
                    offset: int = 0) -> NComplex:
    segs = random_segments(F.N, rng, n_degrees, max_dim)
    C, _ = segments_complex(F, segs, offset)
    return conjugate(C, random_basis_change(F, rng, C.dims))


def random_homomorphism(C: NComplex, D: NComplex, rng: np.random.Generator) -> GradedMap:
    F = C.F
    basis = hom_space_basis(C, D)
    mats = {n: F.zeros(D.dim(n), C.dim(n)) for n in set(C.dims) & set(D.dims)}
    for b in basis:
        c = F.random(rng)
        for n, M in b.items():
            mats[n] = F.madd(mats[n], F.smul(c, M))
    return GradedMap(F, C.dims, D.dims, 0, mats)


def _transport(F: Field, f: GradedMap, g_src: dict, g_tgt: dict) -> GradedMap:
    """Express ``f`` in changed bases: f' = g_tgt f g_src^-1."""
    mats = {}
    for n, M in f.mats.items():
        Mt = M
        if n + f.shift in g_tgt:
            Mt = F.matmul(g_tgt[n + f.shift][0], Mt)
        if n in g_src:
            Mt = F.matmul(Mt, g_src[n][1])
        mats[n] = Mt
    return GradedMap(F, f.source_dims, f.target_dims, f.shift, mats)


def staircase_ses(F: Field, rng: np.random.Generator | None = None, n_degrees: int = 5, max_dim: int = 3,
                  segs: list | None = None, cuts: list | None = None):
    """Short exact sequence built by cutting every segment into head and tail.

    The tail of a segment is a subcomplex; the head is the quotient.  Returns
    ``(C1, C2, C3, alpha, beta)``.  With ``rng`` given, random segments and
    cuts are drawn and all three complexes get random bases.
    """
    if segs is None:
        segs = random_segments(F.N, rng, n_degrees, max_dim)
    if cuts is None:
        cuts = [int(rng.integers(0, L + 1)) for _, L in segs]
    C2, pos2 = segments_complex(F, segs)
    tails = [(s + c, L - c) for (s, L), c in zip(segs, cuts) if L - c > 0]
    heads = [(s, c) for (s, L), c in zip(segs, cuts) if c > 0]
    C1, pos1 = segments_complex(F, tails)
    C3, pos3 = segments_complex(F, heads)
    alpha = {n: F.zeros(C2.dim(n), C1.dim(n)) for n in C1.dims}
    beta = {n: F.zeros(C3.dim(n), C2.dim(n)) for n in C2.dims if C3.dim(n)}
    ti = hi = 0
    for (s, L), c, p2 in zip(segs, cuts, pos2):
        if L - c > 0:
            p1 = pos1[ti]
            ti += 1
            for i in range(L - c):
                alpha[s + c + i][p2[c + i], p1[i]] = F.one
        if c > 0:
            p3 = pos3[hi]
            hi += 1
            for i in range(c):
                beta[s + i][p3[i], p2[i]] = F.one
    a = GradedMap(F, C1.dims, C2.dims, 0, alpha)
    b = GradedMap(F, C2.dims, C3.dims, 0, beta)
    if rng is not None:
        g1 = random_basis_change(F, rng, C1.dims)
        g2 = random_basis_change(F, rng, C2.dims)
        g3 = random_basis_change(F, rng, C3.dims)
        a = _transport(F, a, g1, g2)
        b = _transport(F, b, g2, g3)
        C1, C2, C3 = conjugate(C1, g1), conjugate(C2, g2), conjugate(C3, g3)
    return C1, C2, C3, a, b


def split_ses(C1: NComplex, C3: NComplex, rng: np.random.Generator | None = None):
    """0 -> C1 -> C1 + C3 -> C3 -> 0, optionally with a random basis on the middle term."""
    F = C1.F
    C2, inc1, _, _, pr3 = direct_sum(C1, C3)
    if rng is None:
        return C1, C2, C3, inc1, pr3
    g = random_basis_change(F, rng, C2.dims)
    return C1, conjugate(C2, g), C3, _transport(F, inc1, {}, g), _transport(F, pr3, g, {})
