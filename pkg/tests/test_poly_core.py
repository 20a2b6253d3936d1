from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import gaussian, nonzero, polys
from hardy_closure.poly_core import upoly
from hardy_closure.poly_core.algorithms import exact_divide, gcd, resultant, squarefree_factor
from hardy_closure.poly_core.gaussian import GaussianRational
from hardy_closure.poly_core.parse import ParseError, format_poly, parse_poly, parse_poly_list
from hardy_closure.poly_core.poly import DomainError, Poly
from hardy_closure.poly_core.roots import UnivariateSlice, cluster_roots, roots_univariate

P = parse_poly
z1, z2 = Poly.var(0), Poly.var(1)


def test_ring_examples():
    assert (z1 + z2) * (z1 - z2) == P("z1^2 - z2^2")
    assert P("z1*z2 + 3") * Poly.zero() == Poly.zero()
    assert P("z1*z2 - 1").evaluate((Fraction(1, 2), Fraction(1, 2))) == GaussianRational(Fraction(-3, 4))


def test_negative_power_rejected():
    with pytest.raises(DomainError):
        z1 ** -1


def test_parse_grammar_example():
    p = P("(1/2+1/3*i)*z1^2*z2 - z2 + 1")
    assert p.terms[(2, 1)] == GaussianRational(Fraction(1, 2), Fraction(1, 3))
    assert p.terms[(0, 1)] == GaussianRational(-1)
    assert p.terms[(0, 0)] == GaussianRational(1)


def test_parse_decimal_snaps_to_rational():
    assert P("0.5*z1") == P("1/2*z1")


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        P("z1 +\n  * z2")
    assert exc.value.line == 2
    assert exc.value.column == 3


@pytest.mark.parametrize("text", ["z3", "z1^", "(z1", "z1 / z2", "1/0"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        P(text)


def test_parse_list_forms():
    assert parse_poly_list("(z1-1/2; z2-1/3)") == parse_poly_list("z1-1/2; z2-1/3")
    assert len(parse_poly_list("z1; z2; z1*z2")) == 3


@given(polys())
def test_format_round_trip(p):
    assert P(format_poly(p)) == p


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(polys(max_degree=3), st.tuples(gaussian, gaussian))
def test_exact_and_float_evaluation_agree(p, pt):
    exact = complex(p.evaluate(pt))
    approx, err = p.evaluate_float((complex(pt[0]), complex(pt[1])))
    assert abs(exact - approx) <= err + 1e-12


def test_gcd_examples():
    f = P("z1*z2 - 1")
    assert gcd(f * P("z1 + z2 - 2"), f) == f
    assert gcd(z1, z2) == Poly.one()
    assert gcd(P("z1^2 - z2^2"), P("z1 - z2")) == P("z1 - z2")


def test_gcd_both_zero():
    with pytest.raises(DomainError):
        gcd(Poly.zero(), Poly.zero())


@given(nonzero(polys(2, 3)), nonzero(polys(2, 3)), nonzero(polys(2, 3)))
def test_gcd_divides_and_contains_common_factor(a, b, c):
    g = gcd(a * c, b * c)
    exact_divide(a * c, g)
    exact_divide(b * c, g)
    if not c.is_constant():
        exact_divide(g, c.monic())


def test_resultant_examples():
    r = resultant(P("z1*z2 - 1"), P("z2 + z1 - 2"), 1)
    assert r.monic() == P("(z1 - 1)^2")
    # standard Sylvester sign convention gives -1; any nonzero constant means no common root
    one = resultant(z2, z2 - 1, 1)
    assert one.is_constant() and abs(complex(one.constant_value())) == 1
    p = P("z1*z2 + z2^2 - 3")
    assert resultant(p, p, 1).is_zero()


def test_resultant_zero_input():
    with pytest.raises(DomainError):
        resultant(Poly.zero(), z2, 1)


@given(nonzero(polys(2, 4)), nonzero(polys(2, 4)), st.floats(-1.5, 1.5))
def test_resultant_specializes(a, b, x):
    """Res_z2(a, b)(x) equals the resultant of the slices when leading coefficients survive."""
    if a.degree_in(1) < 1 or b.degree_in(1) < 1:
        return
    x = GaussianRational(Fraction(x).limit_denominator(64))
    ua = upoly.to_complex(upoly.from_poly(a.substitute(0, Poly.constant(x)), 1))
    ub = upoly.to_complex(upoly.from_poly(b.substitute(0, Poly.constant(x)), 1))
    if len(ua) - 1 != a.degree_in(1) or len(ub) - 1 != b.degree_in(1):
        return
    r = resultant(a, b, 1)
    val = complex(r.evaluate((x, GaussianRational(0)))) if not r.is_zero() else 0
    ra = np.roots(ua[::-1])
    expected = ua[-1] ** (len(ub) - 1) * np.prod([np.polyval(ub[::-1], t) for t in ra])
    assert abs(abs(val) - abs(expected)) <= 1e-8 * (1 + abs(expected))


def test_squarefree_examples():
    assert squarefree_factor(P("(z1 - z2)^2*(z1*z2 - 1)")) == [(P("z1 - z2"), 2), (P("z1*z2 - 1"), 1)]
    assert squarefree_factor(z1) == [(z1, 1)]
    assert squarefree_factor(Poly.constant(5)) == []
    with pytest.raises(DomainError):
        squarefree_factor(Poly.zero())


@given(nonzero(polys(2, 3)), nonzero(polys(1, 2)))
def test_squarefree_reassembles(a, b):
    p = a * b * b
    if p.is_constant():
        return
    total = Poly.one()
    for f, k in squarefree_factor(p):
        total = total * f ** k
    assert total == p.monic()


def test_roots_examples():
    r = sorted(roots_univariate(UnivariateSlice((1, 0, 1))), key=lambda t: t[0].imag)
    assert abs(r[0][0] + 1j) < 1e-12 and abs(r[1][0] - 1j) < 1e-12
    lin = roots_univariate(UnivariateSlice((-(2 + 1j), 1)))
    assert abs(lin[0][0] - (2 + 1j)) < 1e-12
    cube = np.poly1d([1, -1.5, 0.75, -0.125]).coeffs[::-1]
    clusters = cluster_roots([t[0] for t in roots_univariate(UnivariateSlice(tuple(cube)))], 1e-6)
    assert len(clusters) == 1
    assert abs(clusters[0][0] - 0.5) < 1e-6 and clusters[0][1] == 3


@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=8))
def test_roots_residual_and_count(rts):
    coeffs = np.poly(rts)[::-1]
    u = UnivariateSlice(tuple(coeffs))
    found = roots_univariate(u)
    assert len(found) == len(rts)
    scale = 1 + max(abs(c) for c in coeffs)
    for r, _ in found:
        assert abs(np.polyval(coeffs[::-1], r)) <= 1e-9 * scale


def test_gaussian_rational_from_complex():
    assert GaussianRational.from_complex(0.5 - 0.25j) == GaussianRational(Fraction(1, 2), Fraction(-1, 4))
    assert GaussianRational.from_complex(2 ** 0.5, max_den=1000, tol=1e-9) is None
