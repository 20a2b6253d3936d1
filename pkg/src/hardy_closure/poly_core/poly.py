"""Sparse multivariate polynomials over Q(i).

The working ring is C[z1, z2]; a third variable appears only inside the
elimination step of ideal intersection.  Terms are stored as
``{exponent_tuple: GaussianRational}`` with no zero coefficients.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Iterable, Tuple

import numpy as np

from .gaussian import ONE, ZERO, GaussianRational

Exponent = Tuple[int, ...]
MonomialOrder = Callable[[Exponent], tuple]

VARIABLE_NAMES = ("z1", "z2", "t")


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


def grlex(e: Exponent) -> tuple:
    """Graded lexicographic key with z1 > z2 (> t)."""
    return (sum(e),) + tuple(e)


def elimination_order(eliminate: Iterable[int]) -> MonomialOrder:
    """Block order: eliminated variables first (grlex inside each block)."""
    elim = tuple(sorted(eliminate))

    def key(e: Exponent) -> tuple:
        head = tuple(e[i] for i in elim)
        tail = tuple(x for i, x in enumerate(e) if i not in elim)
        return (sum(head),) + head + (sum(tail),) + tail

    return key


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables over Q(i)."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms=None, nvars: int = 2):
        clean: Dict[Exponent, GaussianRational] = {}
        if terms:
            for e, c in terms.items():
                c = GaussianRational.coerce(c)
                if not c.is_zero():
                    e = tuple(int(x) for x in e)
                    if len(e) != nvars or any(x < 0 for x in e):
                        raise DomainError(f"bad exponent {e} for {nvars} variables")
                    clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms: Dict[Exponent, GaussianRational], nvars: int) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "nvars", nvars)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c, nvars: int = 2) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def zero(cls, nvars: int = 2) -> "Poly":
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars: int = 2) -> "Poly":
        return cls._raw({(0,) * nvars: ONE}, nvars)

    @classmethod
    def var(cls, index: int, nvars: int = 2) -> "Poly":
        e = [0] * nvars
        e[index] = 1
        return cls._raw({tuple(e): ONE}, nvars)

    @classmethod
    def monomial(cls, e: Exponent, c=ONE) -> "Poly":
        return cls({tuple(e): c}, len(e))

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussianRational:
        return self.terms.get((0,) * self.nvars, ZERO)

    @property
    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def variables(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def leading_exponent(self, order: MonomialOrder = grlex) -> Exponent:
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        return max(self.terms, key=order)

    def leading_coefficient(self, order: MonomialOrder = grlex) -> GaussianRational:
        return self.terms[self.leading_exponent(order)]

    def sorted_terms(self, order: MonomialOrder = grlex):
        return sorted(self.terms.items(), key=lambda kv: order(kv[0]), reverse=True)

    def monic(self, order: MonomialOrder = grlex) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc.is_one():
            return self
        inv = lc.inverse()
        return Poly._raw({e: c * inv for e, c in self.terms.items()}, self.nvars)

    def max_coefficient_magnitude(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    # ring operations
    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise DomainError("polynomials live in rings with different variable counts")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = GaussianRational.coerce(other)
            if c.is_zero():
                return Poly.zero(self.nvars)
            return Poly._raw({e: v * c for e, v in self.terms.items()}, self.nvars)
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        out: Dict[Exponent, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                prod = c1 * c2
                s = out.get(e)
                out[e] = prod if s is None else s + prod
        return Poly._raw({e: c for e, c in out.items() if not c.is_zero()}, self.nvars)

    __rmul__ = __mul__

    def mul_term(self, e: Exponent, c: GaussianRational) -> "Poly":
        return Poly._raw({_add_exp(k, e): v * c for k, v in self.terms.items()}, self.nvars)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial power needs a non-negative integer exponent")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, GaussianRational)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution
    def derivative(self, var: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return Poly._raw(out, self.nvars)

    def coefficients_in(self, var: int) -> Dict[int, "Poly"]:
        """Split as sum over k of ``coeff_k * x_var^k`` (coefficients free of x_var)."""
        parts: Dict[int, Dict[Exponent, GaussianRational]] = {}
        for e, c in self.terms.items():
            k = e[var]
            ne = list(e)
            ne[var] = 0
            parts.setdefault(k, {})[tuple(ne)] = c
        return {k: Poly._raw(v, self.nvars) for k, v in parts.items()}

    def from_coefficients_in(self, var: int, coeffs: Dict[int, "Poly"]) -> "Poly":
        out = Poly.zero(self.nvars)
        for k, c in coeffs.items():
            e = [0] * self.nvars
            e[var] = k
            out = out + c.mul_term(tuple(e), ONE)
        return out

    def substitute(self, var: int, value: "Poly") -> "Poly":
        """Replace x_var by a polynomial (Horner in x_var)."""
        value = self._lift(value)
        coeffs = self.coefficients_in(var)
        out = Poly.zero(self.nvars)
        for k in range(max(coeffs, default=0), -1, -1):
            out = out * value
            if k in coeffs:
                out = out + coeffs[k]
        return out

    def extend(self, nvars: int) -> "Poly":
        """Embed into a ring with more variables (new ones appended)."""
        pad = (0,) * (nvars - self.nvars)
        return Poly._raw({e + pad: c for e, c in self.terms.items()}, nvars)

    def restrict(self, nvars: int) -> "Poly":
        """Drop trailing variables; they must not occur."""
        out = {}
        for e, c in self.terms.items():
            if any(e[nvars:]):
                raise DomainError("polynomial involves a dropped variable")
            out[e[:nvars]] = c
        return Poly._raw(out, nvars)

    # evaluation
    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        """Exact evaluation at Q(i) points, complex evaluation otherwise."""
        if all(isinstance(x, (int, GaussianRational)) or hasattr(x, "denominator") for x in point):
            pt = [GaussianRational.coerce(x) for x in point]
            total = ZERO
            for e, c in self.terms.items():
                v = c
                for x, k in zip(pt, e):
                    if k:
                        v = v * x ** k
                total = total + v
            return total
        return self.evaluate_float(point)[0]

    def evaluate_float(self, point) -> Tuple[complex, float]:
        """Complex value and a rounding-error bound for floating evaluation."""
        pt = [complex(x) for x in point]
        total = 0j
        absolute = 0.0
        for e, c in self.terms.items():
            v = complex(c)
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
            absolute += abs(v)
        n = max(self.degree, 0) + len(self.terms) + 1
        u = np.finfo(float).eps / 2
        return total, 2.0 * n * u * absolute

    def evaluate_grid(self, z1, z2) -> np.ndarray:
        """Vectorized complex evaluation of a bivariate polynomial on broadcastable arrays."""
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        out = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
        for (a, b), c in self.terms.items():
            out = out + complex(c) * z1 ** a * z2 ** b
        return out

    def to_array(self) -> np.ndarray:
        """Dense complex coefficient array ``C[i, j]`` of ``z1^i z2^j``."""
        if self.nvars != 2:
            raise DomainError("to_array is defined for bivariate polynomials")
        d1 = max(self.degree_in(0), 0)
        d2 = max(self.degree_in(1), 0)
        arr = np.zeros((d1 + 1, d2 + 1), dtype=complex)
        for (a, b), c in self.terms.items():
            arr[a, b] = complex(c)
        return arr

    def __str__(self):
        from .parse import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def z1() -> Poly:
    return Poly.var(0)


def z2() -> Poly:
    return Poly.var(1)


def term_norm_scale(p: Poly) -> float:
    return 1.0 + p.max_coefficient_magnitude()


def binom(n: int, k: int) -> int:
    return math.comb(n, k)
