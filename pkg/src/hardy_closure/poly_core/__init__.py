"""Exact bivariate polynomial arithmetic over Q(i) and univariate root finding."""

from .gaussian import GaussianRational
from .parse import ParseError, format_poly, parse_poly, parse_poly_list
from .poly import DomainError, Poly, elimination_order, grlex
from .algorithms import gcd, resultant, squarefree_factor
from .roots import NonConvergenceError, UnivariateSlice, roots_univariate, slice_poly

__all__ = [
    "DomainError",
    "GaussianRational",
    "NonConvergenceError",
    "ParseError",
    "Poly",
    "UnivariateSlice",
    "elimination_order",
    "format_poly",
    "gcd",
    "grlex",
    "parse_poly",
    "parse_poly_list",
    "resultant",
    "roots_univariate",
    "slice_poly",
    "squarefree_factor",
]
