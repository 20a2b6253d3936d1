import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import nonzero, polys
from hardy_closure.hardy_oracle import (
    HardyVector,
    SingularSampleError,
    density_diagnostic,
    density_distance,
    distance_profile,
    fk_norm,
    h2_norm,
    ideal_distance,
    kernel_lower_bound,
    product_bound_check,
    quotient_bound_check,
    quotient_ratio,
    torus_norm,
)
from hardy_closure.poly_core import parse_poly as P
from hardy_closure.poly_core.poly import DomainError, Poly

ZERO_FREE = ["z1*z2 - 1", "z1 + z2 - 2", "2*z1*z2 + z1 + z2 + 2"]
EVEN = list(range(2, 17, 2))


def test_norm_examples():
    assert h2_norm(Poly.one()) == 1.0
    assert abs(h2_norm(P("z1 + z2")) - math.sqrt(2)) < 1e-15
    assert h2_norm(HardyVector({(0, 0): 3, (2, 1): 4j})) == 5.0


@given(polys(max_degree=10, max_terms=12))
def test_norm_matches_torus_quadrature(p):
    a = h2_norm(p)
    b = torus_norm(p)
    assert abs(a - b) <= 1e-10 * max(a, 1e-300) or (a == 0 and b < 1e-14)


def test_distance_trivial():
    assert density_distance(Poly.one(), 0).distance < 1e-15
    assert density_distance(Poly.one(), 7).distance < 1e-15


def test_distance_floor_closed_form():
    """1 - (z1 - a) q with a = 1/2 reduces to the disc: dist^2 = (1 - a^2) / (1 - a^(2(d+2)))."""
    p = P("z1 - 1/2")
    for d in range(0, 17):
        expected = math.sqrt(0.75 / (1 - 0.25 ** (d + 2)))
        got = density_distance(p, d).distance
        assert abs(got - expected) < 1e-12
        assert got >= math.sqrt(3) / 2 - 1e-12


def test_distance_profile_for_z1z2_minus_1():
    """In u = z1 z2 the problem is 1 - (u - 1) q(u), deg q <= k, whose optimum is 1/sqrt(k + 2)."""
    prof = distance_profile(P("z1*z2 - 1"), EVEN)
    for d, value in zip(EVEN, prof):
        assert abs(value - 1 / math.sqrt(d // 2 + 2)) < 1e-12
    assert all(a - b >= 1e-6 for a, b in zip(prof, prof[1:]))


@pytest.mark.parametrize("text", ZERO_FREE)
def test_zero_free_profiles_strictly_decrease(text):
    prof = distance_profile(P(text), EVEN)
    assert all(a - b >= 1e-6 for a, b in zip(prof, prof[1:]))


@given(nonzero(polys(2, 4)))
@settings(max_examples=25)
def test_distance_non_increasing(p):
    prof = distance_profile(p, range(0, 7))
    assert all(b <= a + 1e-12 for a, b in zip(prof, prof[1:]))


@given(st.floats(-0.9, 0.9), st.floats(-0.9, 0.9), nonzero(polys(1, 3)))
@settings(max_examples=25)
def test_kernel_bound_holds_at_zeros(a, b, q):
    from fractions import Fraction
    from hardy_closure.poly_core.gaussian import GaussianRational
    fa, fb = Fraction(a).limit_denominator(20), Fraction(b).limit_denominator(20)
    p = (Poly.var(0) - Poly.constant(GaussianRational(fa))) * q + \
        (Poly.var(1) - Poly.constant(GaussianRational(fb))) * Poly.var(0) ** 2
    bound = kernel_lower_bound([(float(fa), float(fb))])
    for d in (2, 5):
        assert density_distance(p, d).distance >= bound - 1e-6


def test_ideal_distance_respects_common_zero():
    gens = [P("z1 - 1/2"), P("z2 + 1/3")]
    bound = kernel_lower_bound([(0.5, -1 / 3)])
    for d in (1, 4, 8):
        assert ideal_distance(gens, d).distance >= bound - 1e-9


def test_ideal_distance_without_interior_zero_decays():
    prof = [ideal_distance([P("z1 - 2"), P("z2")], d).distance for d in (1, 3, 5, 7)]
    assert all(a > b for a, b in zip(prof, prof[1:])) and prof[-1] < 0.02


def test_kernel_bound_examples():
    assert kernel_lower_bound([(0, 0)]) == 1.0
    assert abs(kernel_lower_bound([(0.5, 0)]) - math.sqrt(3) / 2) < 1e-15
    assert kernel_lower_bound([]) == 0.0
    with pytest.raises(DomainError):
        kernel_lower_bound([(1.0, 0.0)])


def test_fk_trivial():
    r = fk_norm(Poly.one(), 5)
    assert r.norm == 0.0 and r.sup == 1.0


def test_fk_closed_form_for_z1z2_minus_1():
    """f_k - 1 = (1 - s) u / (s u - 1) with s = 1 - 1/k, so ||f_k - 1||^2 = 1 / (2k - 1)."""
    p = P("z1*z2 - 1")
    for k in (2, 4, 8, 10, 16, 32):
        r = fk_norm(p, k)
        assert abs(r.norm - 1 / math.sqrt(2 * k - 1)) < 1e-10
        assert abs(r.sup - 2 / (2 - 1 / k)) < 1e-9
    assert fk_norm(p, 10).norm < fk_norm(p, 2).norm


@pytest.mark.parametrize("text", ZERO_FREE)
def test_fk_sweep_decreases_within_bound(text):
    p = P(text)
    rs = [fk_norm(p, k) for k in (2, 4, 8, 16, 32)]
    assert all(a.norm > b.norm for a, b in zip(rs, rs[1:]))
    assert max(r.sup for r in rs) <= 2 ** p.degree_in(0) + 1e-6


def test_fk_singular_sample():
    with pytest.raises(SingularSampleError) as exc:
        fk_norm(P("z1 - 1/2"), 2)
    assert exc.value.modulus < 1e-12


def test_quotient_examples():
    assert abs(quotient_ratio(1, 0.75, -1) - 8 / 7) < 1e-15
    assert quotient_ratio(1, 0.6, 1) == 0.0
    assert product_bound_check([1, 2j], 0.9) <= 4
    with pytest.raises(DomainError):
        quotient_bound_check(0.5, 0.75)
    with pytest.raises(DomainError):
        quotient_bound_check(2, 0.4)
    with pytest.raises(DomainError):
        product_bound_check([0.3], 0.75)


@given(st.floats(1, 5), st.floats(0, 2 * math.pi), st.floats(0.5001, 0.9999))
def test_single_quotient_bound(mod, arg, r):
    assert quotient_bound_check(mod * np.exp(1j * arg), r, 256) <= 2 + 1e-12


@given(st.lists(st.tuples(st.floats(1, 4), st.floats(0, 2 * math.pi)), min_size=1, max_size=6),
       st.floats(0.5001, 0.9999))
def test_product_quotient_bound(roots, r):
    rts = [m * np.exp(1j * a) for m, a in roots]
    assert product_bound_check(rts, r, 256) <= 2 ** len(rts) * (1 + 1e-12)


@pytest.mark.parametrize("a, b", [(0, 1), (0, 2), (1, 2)])
def test_products_of_dense_polynomials_stay_dense(a, b):
    p = P(ZERO_FREE[a]) * P(ZERO_FREE[b])
    prof = distance_profile(p, EVEN)
    assert all(x > y for x, y in zip(prof, prof[1:]))


def test_density_diagnostic_bundle():
    d = density_diagnostic(P("z1 + z2 - 2"), EVEN, (2, 4, 8))
    assert d.strictly_decreasing() and d.fk_decreasing()
    assert d.sup_bound == 2.0 and max(d.fk_sups) <= 2.0
    d = density_diagnostic(P("z1 - 1/2"), (4, 8), (2, 4), witnesses=[(0.5, 0)])
    assert d.errors and d.floor >= d.kernel_bound - 1e-6
