"""Randomized property checks behind ``ncx selftest``.

Each check draws from its own generator seeded from ``(seed, name)``, so the
outcome does not depend on scheduling when checks run in parallel.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coeff import CyclotomicField, PrimeField, q_binomial, validate_assumption_A
from .generate import random_homomorphism, random_ncomplex, split_ses, staircase_ses
from .homalg import ShortExactSequence, internal_hexagon, snake_hexagon
from .ncomplex import (
    CohomologyTable,
    GradedMap,
    d_power,
    identity_map,
    induced_on_cohomology,
    validate_ncomplex,
)
from .qdga import check_qdga, qpoly_example
from .tensor import d_power_expansion, tensor, tensor_vector

FIELDS = [PrimeField(7, 3, 2), PrimeField(13, 4, 5), PrimeField(11, 5, 3)]


def _rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def _qbinomial(seed, rounds):
    bad = []
    for N in range(2, 9):
        F = CyclotomicField(N)
        if not validate_assumption_A(F).passed:
            bad.append(f"assumption fails for N={N}")
        bad += [f"[{N} {p}] != 0" for p in range(1, N) if not F.is_zero(q_binomial(F, N, p))]
    return bad


def _tensor(seed, rounds):
    rng = _rng(seed, "tensor")
    bad = []
    for F in FIELDS:
        for _ in range(rounds):
            A, B = random_ncomplex(F, rng), random_ncomplex(F, rng)
            T = tensor(A, B)
            if not validate_ncomplex(T):
                bad.append(f"d^N != 0 on a tensor product over {F!r}")
                continue
            for r in A.dims:
                for s in B.dims:
                    x0 = F.random_matrix(rng, A.dim(r), 1)[:, 0]
                    x1 = F.random_matrix(rng, B.dim(s), 1)[:, 0]
                    v = tensor_vector(A, B, x0, r, x1, s)
                    for k in range(F.N + 1):
                        lhs = d_power_expansion(A, B, k, x0, r, x1, s)
                        rhs = F.matvec(d_power(T, r + s, k), v)
                        if not F.is_zero_matrix(F.msub(lhs, rhs).reshape(-1, 1)):
                            bad.append(f"expansion mismatch k={k} over {F!r}")
    return bad


def _hexagons(seed, rounds):
    rng = _rng(seed, "hexagons")
    bad = []
    for F in FIELDS:
        N = F.N
        for _ in range(rounds):
            C = random_ncomplex(F, rng)
            for l in range(1, N):
                for m in range(1, N - l):
                    if not internal_hexagon(C, l, m):
                        bad.append(f"internal hexagon (l={l}, m={m}) not exact over {F!r}")
    return bad


def _snake(seed, rounds):
    rng = _rng(seed, "snake")
    bad = []
    for F in FIELDS:
        for _ in range(rounds):
            for parts in (split_ses(random_ncomplex(F, rng), random_ncomplex(F, rng), rng),
                          staircase_ses(F, rng)):
                s = ShortExactSequence(*parts)
                for n in range(1, F.N):
                    if not snake_hexagon(s, n):
                        bad.append(f"snake hexagon n={n} not exact over {F!r}")
    return bad


def _functoriality(seed, rounds):
    rng = _rng(seed, "functoriality")
    bad = []
    for F in FIELDS:
        for _ in range(rounds):
            A, B, C = (random_ncomplex(F, rng, 4, 2) for _ in range(3))
            f, g = random_homomorphism(A, B, rng), random_homomorphism(B, C, rng)
            for k in range(1, F.N):
                if not induced_on_cohomology(identity_map(A), A, A, k).equals(
                        identity_map_on_cohomology(A, k)):
                    bad.append("identity not preserved")
                lhs = induced_on_cohomology(g.compose(f), A, C, k)
                rhs = induced_on_cohomology(g, B, C, k).compose(induced_on_cohomology(f, A, B, k))
                if not lhs.equals(rhs):
                    bad.append("composition not preserved")
    return bad


def identity_map_on_cohomology(C, k):
    T = CohomologyTable(C)
    dims = T.graded_dims(k)
    return GradedMap(C.F, dims, dims, 0, {n: C.F.eye(v) for n, v in dims.items()})


def _qdga(seed, rounds):
    bad = []
    for N in range(2, 7):
        for F in (CyclotomicField(N),):
            r = check_qdga(qpoly_example(F, 2 * N))
            if not r:
                bad.append(f"qpoly example fails for N={N}: {r.first}")
    return bad


CHECKS = [
    ("q-binomial vanishing", _qbinomial),
    ("tensor nilpotency and expansion", _tensor),
    ("internal hexagons", _hexagons),
    ("snake hexagons", _snake),
    ("functoriality", _functoriality),
    ("qpoly examples are q-differential algebras", _qdga),
]


def run_selftest(seed: int = 0, rounds: int = 10, threads: int = 1) -> list:
    """``[(name, passed, details)]`` in a fixed order."""
    def run(item):
        name, fn = item
        bad = fn(seed, rounds)
        return name, not bad, bad[:10]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, CHECKS))
    return [run(c) for c in CHECKS]
