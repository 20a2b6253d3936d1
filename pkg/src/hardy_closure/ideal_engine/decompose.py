"""Splitting an ideal into curve factors and zero-dimensional point components.

In two variables every prime is maximal or principal, so ``I = g * J`` with
``g`` the gcd of the generators and ``J`` of finite colength.  The curve part
comes from square-free factorization of ``g``; the points of ``J`` come from
its eliminants in z1 and z2 together with a separating linear form
``l = z1 + c*z2`` whose characteristic polynomial on ``R/J`` carries the
local multiplicities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..poly_core import upoly
from ..poly_core.algorithms import squarefree_factor
from ..poly_core.gaussian import GaussianRational
from ..poly_core.poly import DomainError, Exponent, Poly
from ..poly_core.roots import NonConvergenceError, UnivariateSlice, roots_univariate
from .ideal import (
    Ideal,
    intersect_all,
    minimal_polynomial,
    multiplication_matrix,
    split_principal,
    zero_dimensional_radical,
)
from .linalg import charpoly

POINT_RESIDUAL = 1e-8
_FORM_CANDIDATES = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2),
                    Fraction(-3), Fraction(3, 7), Fraction(5), Fraction(-7, 2), Fraction(11, 3)]


@dataclass
class PointComponent:
    point: Tuple[complex, complex]
    multiplicity: int
    ideal: Optional[Ideal] = None
    exact_point: Optional[Tuple[GaussianRational, GaussianRational]] = None
    staircase: Optional[List[Exponent]] = None
    residual: float = 0.0
    certified: bool = True
    part: int = 0          # index into ZeroDimStructure.parts
    root_index: int = 0    # index into that part's numeric roots


@dataclass
class ZeroDimStructure:
    ideal: Ideal
    form: Poly
    form_coefficient: Fraction
    parts: List[Tuple[upoly.UPoly, int]]
    part_roots: List[List[complex]]
    colength: int


@dataclass
class Decomposition:
    ideal: Ideal
    principal: Poly
    curve_factors: List[Tuple[Poly, int]]
    residual_ideal: Ideal
    point_components: List[PointComponent]
    residual_flag: bool = True
    zero_dim: Optional[ZeroDimStructure] = None
    diagnostics: List[str] = field(default_factory=list)

    def point_ideals(self) -> List[Optional[Ideal]]:
        return [pc.ideal for pc in self.point_components]


def _numeric_roots(a: upoly.UPoly) -> List[complex]:
    if upoly.deg(a) < 1:
        return []
    return [r for r, _ in roots_univariate(UnivariateSlice(tuple(upoly.to_complex(a))))]


def _point_scale(gens: Sequence[Poly], pt) -> float:
    worst = 0.0
    for g in gens:
        val, _ = g.evaluate_float(pt)
        mag = sum(abs(complex(c)) * abs(pt[0]) ** e[0] * abs(pt[1]) ** e[1] for e, c in g.terms.items())
        worst = max(worst, abs(val) / (1.0 + mag))
    return worst


def analyze_zero_dimensional(J: Ideal) -> Tuple[ZeroDimStructure, List[PointComponent], List[str]]:
    """Points, multiplicities and (when exact) primary components of a finite-colength ideal."""
    gb = J.groebner()
    if not gb.is_zero_dimensional():
        raise DomainError("ideal does not have finite colength")
    notes: List[str] = []
    colength = len(gb.standard_monomials())
    n_points = len(zero_dimensional_radical(J).groebner().standard_monomials())
    s1 = upoly.squarefree_part(minimal_polynomial(J, Poly.var(0)))
    s2 = upoly.squarefree_part(minimal_polynomial(J, Poly.var(1)))
    roots1, roots2 = _numeric_roots(s1), _numeric_roots(s2)
    m1 = multiplication_matrix(J, Poly.var(0))
    m2 = multiplication_matrix(J, Poly.var(1))
    chosen = None
    for c in _FORM_CANDIDATES:
        cg = GaussianRational(c)
        mat = [[a + cg * b for a, b in zip(r1, r2)] for r1, r2 in zip(m1, m2)]
        parts = upoly.yun(charpoly(mat))
        if sum(upoly.deg(p) for p, _ in parts) == n_points:
            chosen = (c, parts)
            break
    if chosen is None:
        raise DomainError("no separating linear form among the fixed candidates")
    c, parts = chosen
    form = Poly.var(0) + Poly.var(1) * GaussianRational(c)
    cf = float(c)
    points: List[PointComponent] = []
    part_roots: List[List[complex]] = []
    for pi, (s, mult) in enumerate(parts):
        try:
            lams = _numeric_roots(s)
        except NonConvergenceError as exc:
            lams = list(exc.best_iterate)
            notes.append("eigenvalue root finding did not converge")
        part_roots.append(lams)
        for ri, lam in enumerate(lams):
            pairs = sorted(itertools.product(roots1 or [0j], roots2 or [0j]),
                           key=lambda ab: abs(ab[0] + cf * ab[1] - lam))
            close = [ab for ab in pairs if abs(ab[0] + cf * ab[1] - lam) <= 1e-6 * (1 + abs(lam))]
            # several coordinate pairs can share a form value; the true point annihilates J
            scored = [((complex(a), complex(b)), _point_scale(J.generators, (a, b))) for a, b in (close or pairs[:1])]
            pt, res = min(scored, key=lambda s: s[1])
            certified = res <= POINT_RESIDUAL and abs(pt[0] + cf * pt[1] - lam) <= 1e-7 * (1 + abs(lam))
            if not certified:
                notes.append(f"point near {pt} failed validation (residual {res:.3g})")
            pc = PointComponent(pt, mult, residual=res, certified=certified, part=pi, root_index=ri)
            _attach_exact(J, form, pc)
            points.append(pc)
    points.sort(key=lambda p: (round(p.point[0].real, 9), round(p.point[0].imag, 9),
                               round(p.point[1].real, 9), round(p.point[1].imag, 9)))
    zd = ZeroDimStructure(J, form, c, parts, part_roots, colength)
    if sum(p.multiplicity for p in points) != colength:
        notes.append("local multiplicities do not add up to the colength")
    return zd, points, notes


def _attach_exact(J: Ideal, form: Poly, pc: PointComponent) -> None:
    a = GaussianRational.from_complex(pc.point[0])
    b = GaussianRational.from_complex(pc.point[1])
    if a is None or b is None:
        return
    if not all(g.evaluate([a, b]).is_zero() for g in J.generators):
        return
    pc.exact_point = (a, b)
    lam = form.evaluate([a, b])
    shifted = form - Poly.constant(lam)
    Q = (J + Ideal([shifted ** pc.multiplicity])).reduced()
    pc.ideal = Q
    pc.staircase = Q.groebner().standard_monomials()


def decompose(I: Ideal) -> Decomposition:
    """Curve factors (with multiplicity) and point components of ``I``."""
    g, J = split_principal(I)
    curves = squarefree_factor(g) if not g.is_constant() else []
    if J.is_unit():
        return Decomposition(I, g, curves, J, [], True)
    zd, points, notes = analyze_zero_dimensional(J)
    ok = all(p.certified for p in points) and not notes
    return Decomposition(I, g, curves, J, points, ok, zd, notes)


def _monic_from_roots(roots: Sequence[complex]):
    return upoly.rationalize(upoly.from_roots_complex(roots))


def retained_zero_dimensional(zd: ZeroDimStructure, keep: Sequence[Tuple[int, int]]) -> Optional[Ideal]:
    """The part of ``J`` supported on the kept points, ``J + (chi_kept(l))``.

    ``keep`` lists (part, root_index) pairs.  Returns None when the kept
    factor of the characteristic polynomial is not defined over Q(i).
    """
    keep = set(keep)
    factor: upoly.UPoly = [GaussianRational(1)]
    dropped_any = False
    for pi, (s, mult) in enumerate(zd.parts):
        roots = zd.part_roots[pi]
        kept_roots = [r for ri, r in enumerate(roots) if (pi, ri) in keep]
        if len(kept_roots) == len(roots):
            piece = s
        elif not kept_roots:
            dropped_any = True
            continue
        else:
            dropped_any = True
            piece = _monic_from_roots(kept_roots)
            if piece is None:
                return None
            q, r = upoly.divmod_(s, piece)
            if r:
                return None
        factor = upoly.mul(factor, upoly.power(piece, mult))
    if not dropped_any:
        return zd.ideal
    if upoly.deg(factor) == 0:
        return Ideal.unit()
    return (zd.ideal + Ideal([upoly.compose_linear(factor, zd.form)])).reduced()


def reassemble(dec: Decomposition) -> Ideal:
    """``g * (intersection of point components)``; needs exact point ideals."""
    if dec.point_components:
        if any(pc.ideal is None for pc in dec.point_components):
            raise DomainError("some point components are not defined over Q(i)")
        inner = intersect_all([pc.ideal for pc in dec.point_components])
    else:
        inner = Ideal.unit()
    g = Poly.one()
    for f, k in dec.curve_factors:
        g = g * f ** k
    return Ideal([g * p for p in inner.groebner()]).reduced()
