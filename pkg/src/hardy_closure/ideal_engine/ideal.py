"""Ideals of C[z1, z2]: Groebner bases, membership, intersection, colon, radical."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ..poly_core import upoly
from ..poly_core.algorithms import exact_divide, gcd, squarefree_part
from ..poly_core.gaussian import ONE, GaussianRational
from ..poly_core.parse import format_poly, parse_poly_list
from ..poly_core.poly import DomainError, Exponent, Poly, elimination_order, grlex
from .groebner import DEFAULT_TERM_CAP, buchberger, is_groebner, normal_form
from .linalg import IncrementalEchelon


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis under graded lex (z1 > z2)."""

    polys: Tuple[Poly, ...]

    @property
    def leading_exponents(self) -> List[Exponent]:
        return [p.leading_exponent(grlex) for p in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(f, list(self.polys), grlex)

    def is_zero_dimensional(self) -> bool:
        """Finite staircase: some leading term is a pure power of each variable."""
        if self.is_unit():
            return True
        lead = self.leading_exponents
        return any(e[1] == 0 for e in lead) and any(e[0] == 0 for e in lead)

    def standard_monomials(self) -> List[Exponent]:
        """Monomials outside the leading-term ideal (finite case only), grlex ascending."""
        if not self.is_zero_dimensional():
            raise DomainError("staircase is infinite")
        if self.is_unit():
            return []
        lead = self.leading_exponents
        a_max = min(e[0] for e in lead if e[1] == 0)
        b_max = min(e[1] for e in lead if e[0] == 0)
        out = []
        for a in range(a_max):
            for b in range(b_max):
                if not any(e[0] <= a and e[1] <= b for e in lead):
                    out.append((a, b))
        return sorted(out, key=grlex)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


class Ideal:
    """Finitely generated ideal with a lazily computed reduced Groebner basis."""

    def __init__(self, generators: Iterable[Poly], term_cap: int = DEFAULT_TERM_CAP):
        gens = tuple(g for g in generators)
        if not gens or all(g.is_zero() for g in gens):
            raise DomainError("an ideal needs at least one nonzero generator")
        if any(g.nvars != 2 for g in gens):
            raise DomainError("ideal generators must be bivariate")
        self.generators = gens
        self.term_cap = term_cap
        self._gb: Optional[GroebnerBasis] = None
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, text: str) -> "Ideal":
        return cls(parse_poly_list(text))

    @classmethod
    def unit(cls) -> "Ideal":
        return cls([Poly.one()])

    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    basis = buchberger(self.generators, grlex, self.term_cap)
                    self._gb = GroebnerBasis(tuple(basis))
        return self._gb

    def reduced(self) -> "Ideal":
        out = Ideal(self.groebner().polys, self.term_cap)
        out._gb = self.groebner()
        return out

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def contains(self, f: Poly) -> bool:
        return self.groebner().normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.groebner().polys == other.groebner().polys

    def __hash__(self):
        return hash(self.groebner().polys)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators, self.term_cap)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.groebner() for b in other.groebner()], self.term_cap)

    def strings(self) -> List[str]:
        return [format_poly(p) for p in self.groebner().polys]

    def __str__(self):
        return "(" + "; ".join(format_poly(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal({self})"


def groebner(I: Ideal) -> GroebnerBasis:
    return I.groebner()


def member(f: Poly, I: Ideal) -> Tuple[bool, Poly]:
    """Membership test and the normal form of ``f`` modulo ``I``."""
    nf = I.groebner().normal_form(f)
    return nf.is_zero(), nf


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating t from ``t*I + (1 - t)*J``."""
    t = Poly.var(2, 3)
    one = Poly.one(3)
    gens = [t * g.extend(3) for g in I.groebner()] + [(one - t) * g.extend(3) for g in J.groebner()]
    order = elimination_order([2])
    basis = buchberger(gens, order, I.term_cap)
    kept = [g.restrict(2) for g in basis if g.degree_in(2) <= 0]
    return Ideal(kept, I.term_cap).reduced()


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        return Ideal.unit()
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def colon(I: Ideal, f: Poly) -> Ideal:
    """``(I : f) = {g : g*f in I}`` via ``(I ∩ (f)) / f``."""
    if f.is_zero():
        raise DomainError("colon by the zero polynomial")
    meet = intersect(I, Ideal([f], I.term_cap))
    return Ideal([exact_divide(g, f) for g in meet.groebner()], I.term_cap).reduced()


def generators_gcd(I: Ideal) -> Poly:
    """Monic gcd of the reduced basis: the principal (curve) part of ``I``."""
    g = Poly.zero()
    for p in I.groebner():
        g = gcd(g, p)
        if g.is_constant():
            return Poly.one()
    return g


def split_principal(I: Ideal) -> Tuple[Poly, Ideal]:
    """Write ``I = g * J`` with ``g`` the gcd of the generators; J has finite colength."""
    g = generators_gcd(I)
    if g.is_constant():
        return Poly.one(), I
    return g, Ideal([exact_divide(p, g) for p in I.groebner()], I.term_cap).reduced()


def quotient_vector(gb: GroebnerBasis, f: Poly, basis: Sequence[Exponent]) -> List[GaussianRational]:
    nf = gb.normal_form(f)
    index = {e: k for k, e in enumerate(basis)}
    vec = [GaussianRational(0)] * len(basis)
    for e, c in nf.terms.items():
        vec[index[e]] = c
    return vec


def minimal_polynomial(I: Ideal, form: Poly) -> upoly.UPoly:
    """Monic minimal polynomial of multiplication by ``form`` on R/I (finite colength)."""
    gb = I.groebner()
    basis = gb.standard_monomials()
    if not basis:
        return [ONE]
    ech = IncrementalEchelon(len(basis))
    power = Poly.one()
    k = 0
    while True:
        combo = ech.add(quotient_vector(gb, power, basis))
        if combo is not None:
            # form^k = sum combo_j form^j
            return upoly.monic(upoly.trim([-c for c in combo] + [ONE]))
        power = gb.normal_form(power * form)
        k += 1


def eliminant(I: Ideal, var: int) -> Poly:
    """Generator of ``I ∩ C[z_var]`` for an ideal of finite colength."""
    return upoly.to_poly(minimal_polynomial(I, Poly.var(var)), var)


def multiplication_matrix(I: Ideal, form: Poly):
    gb = I.groebner()
    basis = gb.standard_monomials()
    cols = [quotient_vector(gb, form * Poly.monomial(e), basis) for e in basis]
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def zero_dimensional_radical(J: Ideal) -> Ideal:
    """Radical of a finite-colength ideal: adjoin square-free eliminants."""
    if J.is_unit():
        return J
    s1 = upoly.squarefree_part(minimal_polynomial(J, Poly.var(0)))
    s2 = upoly.squarefree_part(minimal_polynomial(J, Poly.var(1)))
    return (J + Ideal([upoly.to_poly(s1, 0), upoly.to_poly(s2, 1)])).reduced()


def radical(I: Ideal) -> Ideal:
    """``r(I) = (squarefree part of the curve factor) ∩ r(J)`` where ``I = g*J``."""
    g, J = split_principal(I)
    rad_j = zero_dimensional_radical(J)
    if g.is_constant():
        return rad_j
    principal = Ideal([squarefree_part(g)], I.term_cap)
    if rad_j.is_unit():
        return principal.reduced()
    return intersect(principal, rad_j)


def check_buchberger(gb: GroebnerBasis) -> bool:
    return is_groebner(list(gb.polys), grlex)
