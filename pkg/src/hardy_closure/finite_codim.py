"""Finite codimension: staircases, truncated ideal spans and point functionals.

With a degree-compatible order, ``I ∩ P_d`` is spanned by ``g * m`` for
Gröbner basis elements ``g`` and monomials ``m`` with ``deg(g m) <= d``.
For an ideal supported at finitely many points, the same subspace is cut out
by derivative functionals at each point: ``f`` lies in the local component
at ``x`` iff its Taylor jet at ``x`` of order below the local multiplicity
lies in the image of the ideal in the jet space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .hardy_oracle import monomials_upto
from .ideal_engine import Ideal, decompose, groebner
from .poly_core.poly import DomainError, Poly

INFINITE = "INFINITE"
RANK_TOL = 1e-10
ANGLE_TOL = 1e-8


def codimension(I: Ideal):
    """Number of standard monomials, or INFINITE when the staircase is unbounded."""
    gb = groebner(I)
    if gb.is_unit():
        return 0
    if not gb.is_zero_dimensional():
        return INFINITE
    return len(gb.standard_monomials())


def stabilization_degree(I: Ideal) -> Optional[int]:
    """Largest degree of a standard monomial; codim_d is constant from here on."""
    gb = groebner(I)
    if gb.is_unit():
        return 0
    if not gb.is_zero_dimensional():
        return None
    return max(sum(e) for e in gb.standard_monomials())


@dataclass
class TruncatedSubspace:
    degree: int
    monomials: List[Tuple[int, int]]
    basis: np.ndarray          # orthonormal columns in the monomial coordinates
    codim: int

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def _orth(mat: np.ndarray, n: int) -> np.ndarray:
    if mat.size == 0 or mat.shape[1] == 0:
        return np.zeros((n, 0), complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    rank = int(np.sum(s > RANK_TOL * max(s[0], 1.0))) if s.size else 0
    return u[:, :rank]


def _null(mat: np.ndarray, n: int) -> np.ndarray:
    if mat.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    rank = int(np.sum(s > RANK_TOL * max(s[0], 1.0))) if s.size else 0
    return vh[rank:].conj().T


def _subspace(d: int, basis: np.ndarray, mons) -> TruncatedSubspace:
    return TruncatedSubspace(d, mons, basis, len(mons) - basis.shape[1])


def truncate(I: Ideal, d: int) -> TruncatedSubspace:
    if d < 0:
        raise DomainError("degree bound must be non-negative")
    mons = monomials_upto(d)
    index = {e: k for k, e in enumerate(mons)}
    cols = []
    for g in groebner(I):
        if g.degree > d:
            continue
        for m in monomials_upto(d - g.degree):
            v = np.zeros(len(mons), complex)
            for e, c in g.terms.items():
                v[index[(e[0] + m[0], e[1] + m[1])]] = complex(c)
            cols.append(v)
    mat = np.stack(cols, axis=1) if cols else np.zeros((len(mons), 0), complex)
    return _subspace(d, _orth(mat, len(mons)), mons)


def _jet_matrix(point, order: int, mons) -> Tuple[np.ndarray, list]:
    """Taylor coefficients at ``point`` (in u = z - point, |beta| < order) of each monomial."""
    jets = monomials_upto(order - 1)
    a, b = complex(point[0]), complex(point[1])
    mat = np.zeros((len(jets), len(mons)), complex)
    for col, (i, j) in enumerate(mons):
        for row, (s, t) in enumerate(jets):
            if s <= i and t <= j:
                mat[row, col] = math.comb(i, s) * math.comb(j, t) * a ** (i - s) * b ** (j - t)
    return mat, jets


def point_functionals(generators: Sequence[Poly], point, multiplicity: int, d: int) -> np.ndarray:
    """Rows are derivative functionals at ``point`` on P_d whose common kernel is the local component.

    The local component contains all functions vanishing to order
    ``multiplicity`` at the point, so jets of that order suffice.
    """
    order = multiplicity
    jets = monomials_upto(order - 1)
    image_cols = []
    for g in generators:
        gmons = sorted(g.terms)
        gm, _ = _jet_matrix(point, order, gmons)
        gjet = gm @ np.array([complex(g.terms[e]) for e in gmons])
        # multiply the jet of g by u^beta inside the truncated jet algebra
        for beta in jets:
            v = np.zeros(len(jets), complex)
            for k, (s, t) in enumerate(jets):
                tgt = (s + beta[0], t + beta[1])
                if sum(tgt) < order:
                    v[jets.index(tgt)] += gjet[k]
            image_cols.append(v)
    image = _orth(np.stack(image_cols, axis=1), len(jets))
    annihilator = _null(image.conj().T, len(jets)).conj().T
    jet_of_monomials, _ = _jet_matrix(point, order, monomials_upto(d))
    return annihilator @ jet_of_monomials


def functional_subspace(rows: np.ndarray, d: int) -> TruncatedSubspace:
    mons = monomials_upto(d)
    return _subspace(d, _null(rows, len(mons)), mons)


def principal_angles(a: TruncatedSubspace, b: TruncatedSubspace) -> np.ndarray:
    if a.dim == 0 or b.dim == 0:
        return np.zeros(0)
    return scipy.linalg.subspace_angles(a.basis, b.basis)


def same_subspace(a: TruncatedSubspace, b: TruncatedSubspace, tol: float = ANGLE_TOL) -> bool:
    if a.dim != b.dim:
        return False
    ang = principal_angles(a, b)
    return bool(ang.size == 0 or np.max(ang) < tol)


def intersect_subspaces(spaces: Sequence[TruncatedSubspace]) -> TruncatedSubspace:
    """Common part via the stacked complement projectors."""
    first = spaces[0]
    n = len(first.monomials)
    rows = [np.eye(n) - s.basis @ s.basis.conj().T for s in spaces]
    return _subspace(first.degree, _null(np.vstack(rows), n), first.monomials)


@dataclass
class CorrespondenceRecord:
    degree: int
    codimension: int
    codim_d: int
    stabilization_degree: int
    codim_matches: bool
    intersection_matches: bool
    max_angle: float
    minimal: bool
    component_codims: List[int] = field(default_factory=list)
    enlargements: List[int] = field(default_factory=list)
    exact_route_matches: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.codim_matches and self.intersection_matches and self.minimal


def correspondence_check(I: Ideal, d: int) -> CorrespondenceRecord:
    """Truncated check that I corresponds to the intersection of its point components.

    (a) codim_d equals the codimension; (b) the span of I equals the common
    kernel of all point functionals; (c) dropping any component strictly
    enlarges that common kernel.
    """
    codim = codimension(I)
    if codim == INFINITE:
        raise DomainError("ideal has a curve component, so its codimension is infinite")
    dec = decompose(I)
    if dec.curve_factors:
        raise DomainError(f"curve component {dec.curve_factors[0][0]} present")
    for pc in dec.point_components:
        if not all(abs(c) < 1 for c in pc.point):
            raise DomainError(f"point component {pc.point} is not inside the open bidisc")
    trunc = truncate(I, d)
    gens = list(groebner(I))
    comps = [functional_subspace(point_functionals(gens, pc.point, pc.multiplicity, d), d)
             for pc in dec.point_components]
    if comps:
        inter = intersect_subspaces(comps)
    else:
        inter = _subspace(d, np.zeros((len(trunc.monomials), 0), complex), trunc.monomials)
    ang = principal_angles(trunc, inter)
    matches = trunc.dim == inter.dim and (ang.size == 0 or float(np.max(ang)) < ANGLE_TOL)
    enlargements = []
    for k in range(len(comps)):
        rest = [c for j, c in enumerate(comps) if j != k]
        dim = intersect_subspaces(rest).dim if rest else len(trunc.monomials)
        enlargements.append(dim - inter.dim)
    exact_ok = None
    if dec.point_components and all(pc.ideal is not None for pc in dec.point_components):
        exact = intersect_subspaces([truncate(pc.ideal, d) for pc in dec.point_components])
        exact_ok = same_subspace(exact, trunc)
    return CorrespondenceRecord(
        d, codim, trunc.codim, stabilization_degree(I), trunc.codim == codim, matches,
        float(np.max(ang)) if ang.size else 0.0,
        all(e > 0 for e in enlargements),
        [c.codim for c in comps], enlargements, exact_ok)
