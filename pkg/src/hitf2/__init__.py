"""Hit problem for the polynomial algebra over GF(2) under the Steenrod squares."""

from __future__ import annotations

from .f2core import Monomial, Polynomial, WeightVector, parse_monomial, parse_polynomial
from .hitproblem import AdmissibleBasis, admissible_basis_full, admissible_basis_weight, qp_dimension_by_weights
from .steenrod import sq

__all__ = [
    "Monomial",
    "Polynomial",
    "WeightVector",
    "parse_monomial",
    "parse_polynomial",
    "sq",
    "AdmissibleBasis",
    "admissible_basis_full",
    "admissible_basis_weight",
    "qp_dimension_by_weights",
]

__version__ = "0.1.0"
