"""Ideal arithmetic in C[z1, z2]."""

from .decompose import (
    Decomposition,
    PointComponent,
    ZeroDimStructure,
    analyze_zero_dimensional,
    decompose,
    reassemble,
    retained_zero_dimensional,
)
from .groebner import ResourceLimitError, buchberger, is_groebner, normal_form
from .ideal import (
    GroebnerBasis,
    Ideal,
    colon,
    eliminant,
    groebner,
    intersect,
    intersect_all,
    member,
    radical,
    split_principal,
)

__all__ = [
    "Decomposition",
    "GroebnerBasis",
    "Ideal",
    "PointComponent",
    "ResourceLimitError",
    "ZeroDimStructure",
    "analyze_zero_dimensional",
    "buchberger",
    "colon",
    "decompose",
    "eliminant",
    "groebner",
    "intersect",
    "intersect_all",
    "is_groebner",
    "member",
    "normal_form",
    "radical",
    "reassemble",
    "retained_zero_dimensional",
    "split_principal",
]
