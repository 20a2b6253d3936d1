"""Closure of polynomial ideals in the Hardy space of the bidisc."""

from .closure_engine import (
    CLOSED,
    CONFLICT,
    DENSE,
    MIXED,
    ClosureReport,
    associated_primes_closed,
    classify,
    closure,
    cross_validate,
    radical_closed_invariant,
)
from .ideal_engine import Ideal
from .poly_core import Poly, parse_poly
from .variety_geometry import SearchConfig

__version__ = "0.1.0"

__all__ = [
    "CLOSED",
    "CONFLICT",
    "DENSE",
    "MIXED",
    "ClosureReport",
    "Ideal",
    "Poly",
    "SearchConfig",
    "associated_primes_closed",
    "classify",
    "closure",
    "cross_validate",
    "parse_poly",
    "radical_closed_invariant",
]
