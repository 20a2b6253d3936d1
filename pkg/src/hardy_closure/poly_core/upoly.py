"""Dense univariate polynomials over Q(i), stored low degree first."""

from __future__ import annotations

from typing import List, Tuple

from .gaussian import ONE, ZERO, GaussianRational
from .poly import DomainError, Poly

UPoly = List[GaussianRational]


def trim(a: UPoly) -> UPoly:
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def deg(a: UPoly) -> int:
    return len(a) - 1


def add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[k] if k < len(a) else ZERO) + (b[k] if k < len(b) else ZERO) for k in range(n)])


def sub(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[k] if k < len(a) else ZERO) - (b[k] if k < len(b) else ZERO) for k in range(n)])


def mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def scale(a: UPoly, c: GaussianRational) -> UPoly:
    return trim([x * c for x in a])


def power(a: UPoly, k: int) -> UPoly:
    out = [ONE]
    for _ in range(k):
        out = mul(out, a)
    return out


def divmod_(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    inv = b[-1].inverse()
    q = [ZERO] * (len(r) - len(b) + 1)
    r = list(r)
    for k in range(len(r) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv
        q[k] = c
        if not c.is_zero():
            for j, y in enumerate(b):
                r[k + j] = r[k + j] - c * y
    return trim(q), trim(r[: len(b) - 1])


def exact_div(a: UPoly, b: UPoly) -> UPoly:
    q, r = divmod_(a, b)
    if r:
        raise DomainError("univariate division is not exact")
    return q


def monic(a: UPoly) -> UPoly:
    a = trim(a)
    if not a or a[-1].is_one():
        return a
    return scale(a, a[-1].inverse())


def gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(a: UPoly) -> UPoly:
    return trim([a[k] * k for k in range(1, len(a))])


def squarefree_part(a: UPoly) -> UPoly:
    a = monic(a)
    if deg(a) <= 0:
        return a
    return monic(exact_div(a, gcd(a, derivative(a))))


def yun(a: UPoly) -> List[Tuple[UPoly, int]]:
    """Square-free decomposition ``a = lc * prod f_i^i`` (monic f_i, constants dropped)."""
    a = monic(a)
    if deg(a) <= 0:
        return []
    out = []
    da = derivative(a)
    c = gcd(a, da)
    w = exact_div(a, c)
    y = exact_div(da, c)
    z = sub(y, derivative(w))
    i = 1
    while deg(w) > 0:
        g = gcd(w, z)
        if deg(g) > 0:
            out.append((g, i))
        w = exact_div(w, g)
        y = exact_div(z, g)
        z = sub(y, derivative(w))
        i += 1
    return out


def evaluate(a: UPoly, x: GaussianRational) -> GaussianRational:
    out = ZERO
    for c in reversed(a):
        out = out * x + c
    return out


def to_complex(a: UPoly) -> List[complex]:
    return [complex(c) for c in a]


def from_poly(p: Poly, var: int) -> UPoly:
    """Coefficient list of a polynomial that involves only variable ``var``."""
    if p.variables() - {var}:
        raise DomainError("polynomial is not univariate in the requested variable")
    out = [ZERO] * (max(p.degree_in(var), 0) + 1)
    for e, c in p.terms.items():
        out[e[var]] = c
    return trim(out)


def to_poly(a: UPoly, var: int, nvars: int = 2) -> Poly:
    terms = {}
    for k, c in enumerate(a):
        if not c.is_zero():
            e = [0] * nvars
            e[var] = k
            terms[tuple(e)] = c
    return Poly(terms, nvars)


def compose_linear(a: UPoly, form: Poly) -> Poly:
    """Evaluate ``a`` at a polynomial (Horner), giving a multivariate polynomial."""
    out = Poly.zero(form.nvars)
    for c in reversed(a):
        out = out * form + Poly.constant(c, form.nvars)
    return out


def from_roots_complex(roots) -> List[complex]:
    """Monic coefficient list (low first) of prod (x - r)."""
    coeffs = [1 + 0j]
    for r in roots:
        nxt = [0j] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        coeffs = nxt
    return coeffs


def rationalize(coeffs, max_den: int = 10**6, tol: float = 1e-8):
    """Snap complex coefficients to Q(i); None when any coefficient fails."""
    out = []
    for c in coeffs:
        g = GaussianRational.from_complex(complex(c), max_den=max_den, tol=tol)
        if g is None:
            return None
        out.append(g)
    return trim(out)
