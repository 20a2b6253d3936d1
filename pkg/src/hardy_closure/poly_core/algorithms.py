"""GCD, resultants and square-free factorization in Q(i)[z1, z2]."""

from __future__ import annotations

from typing import Dict, List, Tuple

from . import upoly
from .gaussian import ONE, ZERO, GaussianRational
from .poly import DomainError, Poly, grlex

# recursive view: polynomial in the main variable with Q(i)[other] coefficients
Rec = List[upoly.UPoly]


def _to_rec(p: Poly, main: int) -> Rec:
    other = 1 - main
    d = max(p.degree_in(main), 0)
    rec = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        rec[e[main]][e[other]] = c
    out = []
    for part in rec:
        if part:
            row = [ZERO] * (max(part) + 1)
            for k, c in part.items():
                row[k] = c
            out.append(upoly.trim(row))
        else:
            out.append([])
    while out and not out[-1]:
        out.pop()
    return out


def _from_rec(rec: Rec, main: int) -> Poly:
    other = 1 - main
    terms = {}
    for k, coeff in enumerate(rec):
        for j, c in enumerate(coeff):
            if not c.is_zero():
                e = [0, 0]
                e[main] = k
                e[other] = j
                terms[tuple(e)] = c
    return Poly(terms, 2)


def _content(rec: Rec) -> upoly.UPoly:
    g: upoly.UPoly = []
    for c in rec:
        if c:
            g = upoly.gcd(g, c) if g else upoly.monic(c)
            if upoly.deg(g) == 0:
                break
    return g


def _primitive(rec: Rec) -> Rec:
    c = _content(rec)
    if upoly.deg(c) <= 0:
        return rec
    return [upoly.exact_div(x, c) if x else [] for x in rec]


def _prem(a: Rec, b: Rec) -> Rec:
    """Pseudo-remainder of ``a`` by ``b`` in the main variable."""
    r = [list(x) for x in a]
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [upoly.mul(x, lb) for x in r]
        for j, bj in enumerate(b):
            r[j + shift] = upoly.sub(r[j + shift], upoly.mul(lr, bj))
        while r and not r[-1]:
            r.pop()
    return r


def exact_divide(a: Poly, b: Poly) -> Poly:
    """Quotient ``a / b``; raises DomainError unless ``b`` divides ``a``."""
    q, r = divide(a, b)
    if not r.is_zero():
        raise DomainError("polynomial division is not exact")
    return q


def divide(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    """Division by a single polynomial under graded lex: ``a = q*b + r``."""
    if b.is_zero():
        raise DomainError("division by the zero polynomial")
    lb_e = b.leading_exponent(grlex)
    lb_inv = b.terms[lb_e].inverse()
    rem = dict(a.terms)
    quot = {}
    out_rem = {}
    nv = a.nvars
    while rem:
        e = max(rem, key=grlex)
        c = rem[e]
        if all(x >= y for x, y in zip(e, lb_e)):
            qe = tuple(x - y for x, y in zip(e, lb_e))
            qc = c * lb_inv
            quot[qe] = qc
            for be, bc in b.terms.items():
                te = tuple(x + y for x, y in zip(be, qe))
                v = rem.get(te, ZERO) - qc * bc
                if v.is_zero():
                    rem.pop(te, None)
                else:
                    rem[te] = v
        else:
            out_rem[e] = c
            del rem[e]
    return Poly(quot, nv), Poly(out_rem, nv)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the primitive PRS in z2."""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    main = 1
    ra, rb = _to_rec(a, main), _to_rec(b, main)
    c = upoly.gcd(_content(ra), _content(rb))
    A, B = _primitive(ra), _primitive(rb)
    if len(A) < len(B):
        A, B = B, A
    while True:
        if len(B) == 1:
            g: Rec = [[ONE]]
            break
        R = _prem(A, B)
        if not R:
            g = B
            break
        A, B = B, _primitive(R)
    g = _primitive(g)
    out = _from_rec([upoly.mul(x, c) for x in g], main)
    return out.monic()


def _det(mat: List[List[GaussianRational]]) -> GaussianRational:
    n = len(mat)
    if n == 0:
        return ONE
    m = [list(row) for row in mat]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            f = m[r][col]
            if f.is_zero():
                continue
            f = f * inv
            row_r, row_c = m[r], m[col]
            for k in range(col + 1, n):
                if not row_c[k].is_zero():
                    row_r[k] = row_r[k] - f * row_c[k]
    return det


def sylvester(a: List, b: List) -> List[List]:
    """Sylvester matrix of coefficient lists given high degree first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([ZERO] * i + list(a) + [ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ZERO] * i + list(b) + [ZERO] * (size - n - 1 - i))
    return rows


def resultant(a: Poly, b: Poly, var: int = 1) -> Poly:
    """Resultant with respect to ``var``, a polynomial in the other variable.

    Computed by evaluating the Sylvester determinant at enough integer points
    and interpolating exactly.
    """
    if a.is_zero() or b.is_zero():
        raise DomainError("resultant of a zero polynomial")
    other = 1 - var
    m, n = max(a.degree_in(var), 0), max(b.degree_in(var), 0)
    bound = max(a.degree_in(other), 0) * n + max(b.degree_in(other), 0) * m
    ca, cb = a.coefficients_in(var), b.coefficients_in(var)
    xs, ys = [], []
    for k in range(bound + 1):
        x = GaussianRational(k)
        pt = [x, x]

        def coeff_row(coeffs, d):
            return [coeffs[j].evaluate(pt) if j in coeffs else ZERO for j in range(d, -1, -1)]

        ys.append(_det(sylvester(coeff_row(ca, m), coeff_row(cb, n))))
        xs.append(x)
    return upoly.to_poly(_newton_interpolate(xs, ys), other)


def _newton_interpolate(xs, ys) -> upoly.UPoly:
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: upoly.UPoly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        out = upoly.add(upoly.mul(out, [-xs[i], ONE]), [coef[i]])
    return upoly.trim(out)


def content_in(p: Poly, main: int = 1) -> Poly:
    """Content of ``p`` viewed as a polynomial in ``main`` (monic, in the other variable)."""
    return upoly.to_poly(_content(_to_rec(p, main)), 1 - main)


def squarefree_factor(p: Poly) -> List[Tuple[Poly, int]]:
    """Square-free decomposition: pairwise coprime monic factors with multiplicities.

    The z2-content (a polynomial in z1) and the primitive part are decomposed
    separately, so vertical lines ``z1 = const`` stay separate factors.
    """
    if p.is_zero():
        raise DomainError("square-free factorization of zero")
    if p.is_constant():
        return []
    rec = _to_rec(p, 1)
    cont = _content(rec)
    out: List[Tuple[Poly, int]] = []
    for f, k in upoly.yun(cont):
        out.append((upoly.to_poly(f, 0), k))
    prim = _from_rec(_primitive(rec), 1)
    if prim.degree_in(1) > 0:
        out.extend(_yun_bivariate(prim))
    return sorted(out, key=lambda fk: (fk[0].degree, grlex(fk[0].leading_exponent()), fk[1], str(fk[0])))


def _yun_bivariate(a: Poly) -> List[Tuple[Poly, int]]:
    out = []
    da = a.derivative(1)
    c = gcd(a, da)
    w = exact_divide(a, c)
    y = exact_divide(da, c)
    z = y - w.derivative(1)
    i = 1
    while not w.is_constant():
        g = gcd(w, z) if not z.is_zero() else w.monic()
        if not g.is_constant():
            out.append((g.monic(), i))
        w = exact_divide(w, g)
        y = exact_divide(z, g)
        z = y - w.derivative(1)
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    out = Poly.one(p.nvars)
    for f, _ in squarefree_factor(p):
        out = out * f
    return out
