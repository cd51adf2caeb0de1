"""Exact computations with N-complexes over fields with a primitive N-th root of unity."""

from .coeff import (
    CyclotomicField,
    Cyc,
    PrimeField,
    cyclotomic_poly,
    make_field,
    primitive_roots,
    q_pascal,
    q_binomial,
    q_factorial,
    q_int,
    validate_assumption_A,
)

__all__ = [
    "Cyc",
    "CyclotomicField",
    "PrimeField",
    "cyclotomic_poly",
    "make_field",
    "primitive_roots",
    "q_binomial",
    "q_factorial",
    "q_int",
    "q_pascal",
    "validate_assumption_A",
]

__version__ = "0.1.0"
