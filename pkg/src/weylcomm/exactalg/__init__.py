"""Exact arithmetic over Q(i): numbers, polynomials, determinants, linear solving."""

from .gaussrat import I, ONE, ZERO, GaussRat, as_gaussrat
from .linalg import (
    Inconsistent,
    Parametric,
    Unique,
    det_degree_bound,
    det_eval_interp,
    det_fraction_free,
    det_numeric,
    solve_linear,
    solve_sparse,
)
from .mpoly import MPoly, merge_vars, poly_const, poly_var, var_key
from .polygcd import content, poly_gcd, primitive_part, sqf_list, squarefree_power, udivmod
from .polysystem import SystemSolution, gaussian_roots, solve_polynomial_system, univariate_resultant
from .ratfunc import RatFunc

__all__ = [
    "GaussRat", "as_gaussrat", "I", "ONE", "ZERO",
    "MPoly", "merge_vars", "poly_const", "poly_var", "var_key",
    "RatFunc",
    "poly_gcd", "content", "primitive_part", "sqf_list", "squarefree_power", "udivmod",
    "det_fraction_free", "det_eval_interp", "det_degree_bound", "det_numeric",
    "solve_linear", "solve_sparse", "Unique", "Parametric", "Inconsistent",
    "solve_polynomial_system", "SystemSolution", "gaussian_roots", "univariate_resultant",
]
