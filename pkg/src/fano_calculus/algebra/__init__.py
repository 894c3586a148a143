"""Exact arithmetic: graded polynomials, free algebras with rewriting, matrices."""

from .matrix import ExactMatrix, evaluate_at, minimal_polynomial, rational_roots
from .noncommutative import FreeAlgebra, NCPoly, NormalizationError, RewriteSystem, nc_normalize
from .polynomial import GradedPoly, VariableMismatch

__all__ = [
    "ExactMatrix", "evaluate_at", "minimal_polynomial", "rational_roots",
    "FreeAlgebra", "NCPoly", "NormalizationError", "RewriteSystem", "nc_normalize",
    "GradedPoly", "VariableMismatch",
]
