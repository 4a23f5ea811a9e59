"""Exact arithmetic substrate."""

from .diffring import DiffRing, jet
from .linalg import (
    DependencyResult,
    Elimination,
    clear_denominators,
    linear_dependence,
    linear_dependence_interp,
    normalize_vector,
)
from .matrix import MatR
from .parsing import parse
from .poly import MPoly, format_poly, pretty_poly, sort_vars, var_key
from .ratfunc import ONE, ZERO, RatFunc

__all__ = [
    "DependencyResult", "DiffRing", "Elimination", "MPoly", "MatR", "ONE", "RatFunc", "ZERO",
    "clear_denominators", "format_poly", "jet", "linear_dependence", "linear_dependence_interp",
    "normalize_vector", "parse", "pretty_poly", "sort_vars", "var_key",
]
