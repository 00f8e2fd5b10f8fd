"""Exact arithmetic over Q and Q[t]."""

from .matrix import (
    LinearSystemError,
    QMatrix,
    companion_matrix,
    coords_to_poly,
    kernel_basis,
    multiplication_matrix,
    poly_to_coords,
    rref,
    solve_any,
    solve_unique,
)
from .poly import (
    RationalPoly,
    as_fraction,
    cyclotomic,
    format_rational,
    monic_normalize,
    parse_poly,
    poly_gcd,
    poly_lcm,
    reciprocal_check,
)
from .snf import PolyMatrix, smith_divisors

__all__ = [
    "LinearSystemError",
    "PolyMatrix",
    "QMatrix",
    "RationalPoly",
    "as_fraction",
    "companion_matrix",
    "coords_to_poly",
    "cyclotomic",
    "format_rational",
    "kernel_basis",
    "monic_normalize",
    "multiplication_matrix",
    "parse_poly",
    "poly_gcd",
    "poly_lcm",
    "poly_to_coords",
    "reciprocal_check",
    "rref",
    "smith_divisors",
    "solve_any",
    "solve_unique",
]
