"""Buchberger's algorithm with the sugar strategy over Q(i)."""

from __future__ import annotations

import heapq
from typing import Dict, List, Sequence, Tuple

from ..poly_core.gaussian import ZERO, GaussianRational
from ..poly_core.poly import Exponent, MonomialOrder, Poly, grlex

DEFAULT_TERM_CAP = 200_000


class ResourceLimitError(RuntimeError):
    """The computation exceeded its configured size guard."""


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


class _Divisors:
    """Reducer set with cached leading data."""

    def __init__(self, polys: Sequence[Poly], order: MonomialOrder):
        self.order = order
        self.polys = []
        self.lead = []
        self.inv = []
        for p in polys:
            self.add(p)

    def add(self, p: Poly):
        e = p.leading_exponent(self.order)
        self.polys.append(p)
        self.lead.append(e)
        self.inv.append(p.terms[e].inverse())

    def find(self, e: Exponent):
        for k, le in enumerate(self.lead):
            if _divides(le, e):
                return k
        return None


def normal_form(f: Poly, divisors, order: MonomialOrder = grlex,
                term_cap: int = DEFAULT_TERM_CAP) -> Poly:
    """Fully reduced remainder of ``f`` modulo the given polynomials."""
    if not isinstance(divisors, _Divisors):
        divisors = _Divisors([g for g in divisors if not g.is_zero()], order)
    if not divisors.polys:
        return f
    rem: Dict[Exponent, GaussianRational] = dict(f.terms)
    heap = [tuple(-x for x in order(e)) + (e,) for e in rem]
    heapq.heapify(heap)
    out = {}
    nkey = len(order(next(iter(rem)))) if rem else 0
    while heap:
        item = heapq.heappop(heap)
        e = item[nkey]
        c = rem.pop(e, None)
        if c is None:
            continue
        # skip duplicate heap entries for the same exponent
        while heap and heap[0][nkey] == e:
            heapq.heappop(heap)
        k = divisors.find(e)
        if k is None:
            out[e] = c
            continue
        g = divisors.polys[k]
        le = divisors.lead[k]
        shift = tuple(x - y for x, y in zip(e, le))
        factor = c * divisors.inv[k]
        for ge, gc in g.terms.items():
            if ge == le:
                continue
            te = tuple(x + y for x, y in zip(ge, shift))
            old = rem.get(te)
            v = -(factor * gc) if old is None else old - factor * gc
            if v.is_zero():
                rem.pop(te, None)
            else:
                if old is None:
                    heapq.heappush(heap, tuple(-x for x in order(te)) + (te,))
                rem[te] = v
        if len(rem) > term_cap:
            raise ResourceLimitError(f"normal form exceeded {term_cap} terms")
    return Poly(out, f.nvars)


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    ef, eg = f.leading_exponent(order), g.leading_exponent(order)
    l = _lcm(ef, eg)
    a = f.mul_term(tuple(x - y for x, y in zip(l, ef)), f.terms[ef].inverse())
    b = g.mul_term(tuple(x - y for x, y in zip(l, eg)), g.terms[eg].inverse())
    return a - b


def _sort_key(p: Poly, order: MonomialOrder):
    return (p.degree, order(p.leading_exponent(order)))


def buchberger(polys: Sequence[Poly], order: MonomialOrder = grlex,
               term_cap: int = DEFAULT_TERM_CAP) -> List[Poly]:
    """Reduced, monic Groebner basis of the ideal generated by ``polys``."""
    gens = [p.monic(order) for p in polys if not p.is_zero()]
    if not gens:
        return []
    gens.sort(key=lambda p: _sort_key(p, order))
    basis: List[Poly] = []
    sugar: List[int] = []
    lead: List[Exponent] = []
    pairs: List[Tuple] = []
    counter = 0

    def total_terms():
        return sum(len(b.terms) for b in basis)

    def add(p: Poly, s: int):
        nonlocal counter
        e = p.leading_exponent(order)
        idx = len(basis)
        basis.append(p)
        sugar.append(s)
        lead.append(e)
        for j in range(idx):
            l = _lcm(lead[j], e)
            ps = max(sugar[j] + sum(l) - sum(lead[j]), s + sum(l) - sum(e))
            counter += 1
            heapq.heappush(pairs, (ps, tuple(-x for x in order(l)), counter, j, idx))

    for p in gens:
        p = normal_form(p, basis, order, term_cap) if basis else p
        if not p.is_zero():
            add(p.monic(order), p.degree)
    done = set()
    while pairs:
        ps, _, _, i, j = heapq.heappop(pairs)
        done.add((i, j))
        li, lj = lead[i], lead[j]
        l = _lcm(li, lj)
        # product criterion
        if all(min(x, y) == 0 for x, y in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lead[k], l):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        h = normal_form(s_polynomial(basis[i], basis[j], order), basis, order, term_cap)
        if not h.is_zero():
            add(h.monic(order), ps)
            if total_terms() > term_cap:
                raise ResourceLimitError(f"Groebner basis exceeded {term_cap} terms")
    return reduce_basis(basis, order, term_cap)


def reduce_basis(basis: Sequence[Poly], order: MonomialOrder = grlex,
                 term_cap: int = DEFAULT_TERM_CAP) -> List[Poly]:
    lead = [b.leading_exponent(order) for b in basis]
    keep = []
    for i, b in enumerate(basis):
        redundant = False
        for j in range(len(basis)):
            if j == i or not _divides(lead[j], lead[i]):
                continue
            if lead[j] != lead[i] or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(b)
    out = []
    for i, b in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(b, others, order, term_cap) if others else b
        out.append(r.monic(order))
    out.sort(key=lambda p: order(p.leading_exponent(order)))
    return out


def is_groebner(basis: Sequence[Poly], order: MonomialOrder = grlex) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero():
                return False
    return True
