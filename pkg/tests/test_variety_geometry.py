import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hardy_closure.poly_core import parse_poly as P
from hardy_closure.poly_core.poly import DomainError, Poly
from hardy_closure.variety_geometry import (
    EXHAUSTED,
    WITNESS_FOUND,
    SearchConfig,
    absolute_factor_count,
    boundary_zero_scan,
    disc_witness,
    exact_subproduct,
    reconstruct_factor,
)

CFG = SearchConfig()
ZERO_FREE = ["z1*z2 - 1", "z1 + z2 - 2", "2*z1*z2 + z1 + z2 + 2"]


def _assert_witness(p, st):
    assert st.status == WITNESS_FOUND
    w1, w2 = st.witness
    assert max(abs(w1), abs(w2)) <= 1 - CFG.margin
    assert abs(complex(p.evaluate_float((w1, w2))[0])) <= 1e-9 * (1 + p.max_coefficient_magnitude())


def test_witness_examples():
    p = P("z1 - 1/2")
    st = disc_witness(p, CFG)
    _assert_witness(p, st)
    assert abs(st.witness[0] - 0.5) < 1e-12


@pytest.mark.parametrize("text", ZERO_FREE)
def test_zero_free_curves_have_no_witness(text):
    assert disc_witness(P(text), CFG).status == EXHAUSTED
    assert boundary_zero_scan(P(text), CFG) == []


def test_boundary_scan_negative_control():
    assert boundary_zero_scan(P("z1 - 1/2*z2"), CFG)


@pytest.mark.parametrize("text", ["z2 - 1/3", "z1^2 - z2", "z1*z2 - 1/4", "(z1 - 2)*(z2 - 1/2)", "z1^2 + z2^2 - 1/2"])
def test_witness_found(text):
    _assert_witness(P(text), disc_witness(P(text), CFG))


def test_witness_rejects_constants():
    with pytest.raises(DomainError):
        disc_witness(Poly.constant(3), CFG)
    with pytest.raises(DomainError):
        disc_witness(Poly.zero(), CFG)


@given(st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False))
@settings(max_examples=20)
def test_line_through_interior_point_has_witness(a, b):
    """A line through an interior point always meets the bidisc."""
    from fractions import Fraction
    from hardy_closure.poly_core.gaussian import GaussianRational

    def g(z):
        return GaussianRational(Fraction(z.real).limit_denominator(50), Fraction(z.imag).limit_denominator(50))

    ga, gb = g(a), g(b)
    if max(abs(complex(ga)), abs(complex(gb))) > 0.97:
        return
    p = (Poly.var(0) - Poly.constant(ga)) + (Poly.var(1) - Poly.constant(gb)) * Poly.constant(GaussianRational(2))
    assert disc_witness(p, CFG).found


def test_config_validation():
    with pytest.raises(DomainError):
        SearchConfig(margin=1.5)
    with pytest.raises(DomainError):
        SearchConfig(radius_steps=0)


@pytest.mark.parametrize("text, count", [
    ("z1^2 - z2^2", 2),
    ("z2^2 - z1", 1),
    ("z1*z2 - 1", 1),
    ("z2^3 - z1^2", 1),
    ("(z2^2 - z1)*(z2^2 - z1 - 1)", 2),
    ("z1^2 + z2^2 - 1", 1),
    ("z1^2 - 2", 2),
    ("z2^2 + 1", 2),
    ("(z1 - z2)*(z1 + z2)*(z1 - 2*z2)", 3),
])
def test_absolute_factor_counts(text, count):
    fact = absolute_factor_count(P(text), CFG)
    assert fact.certified
    assert fact.count == count
    sheets = sorted(i for g in fact.sheet_groups for i in g)
    assert sheets == list(range(fact.primitive.degree_in(1)))


@pytest.mark.parametrize("a, b", [("z2^2 - z1", "z1*z2 - 1"), ("z1 - z2", "z2^2 - z1 - 1"), ("z1^2 - z2^2", "z2 - 3")])
def test_count_is_additive(a, b):
    ca = absolute_factor_count(P(a), CFG)
    cb = absolute_factor_count(P(b), CFG)
    cab = absolute_factor_count(P(a) * P(b), CFG)
    assert ca.certified and cb.certified and cab.certified
    assert cab.count == ca.count + cb.count


def test_absolute_factor_needs_squarefree():
    with pytest.raises(DomainError):
        absolute_factor_count(P("(z1 - z2)^2"), CFG)


def test_reconstructed_factors_divide_exactly():
    f = P("(z1*z2 - 1)*(z1 - z2^2)")
    fact = absolute_factor_count(f, CFG)
    found = []
    for grp in fact.sheet_groups:
        h = reconstruct_factor(fact, grp, CFG)
        assert h is not None
        found.append(exact_subproduct(f, [h]))
    assert sorted(str(g) for g in found) == ["z1*z2 - 1", "z2^2 - z1"]


def test_irrational_split_is_not_exact():
    f = P("z1^2 - 2*z2^2")
    fact = absolute_factor_count(f, CFG)
    assert fact.count == 2
    h = reconstruct_factor(fact, fact.sheet_groups[0], CFG)
    assert h is not None
    assert exact_subproduct(f, [h]) is None
    # the numeric factor is a line z1 = ±sqrt(2) z2
    ratio = abs(h[1, 0] / h[0, 1]) if h.shape == (2, 2) else abs(h[0, 1] / h[1, 0])
    assert abs(ratio - np.sqrt(2)) < 1e-8 or abs(ratio - 1 / np.sqrt(2)) < 1e-8
