import pytest
from hypothesis import given, strategies as st

from conftest import nonzero, polys
from hardy_closure.ideal_engine import (
    Ideal,
    ResourceLimitError,
    colon,
    decompose,
    groebner,
    intersect,
    is_groebner,
    member,
    radical,
    reassemble,
)
from hardy_closure.ideal_engine.ideal import check_buchberger
from hardy_closure.poly_core import parse_poly as P
from hardy_closure.poly_core.poly import DomainError, Poly

I_ = Ideal.parse

RADICAL_CORPUS = [
    "(z1 - z2)^2", "z1^2; z2", "z1*z2", "(z1 - 1/2)^3*(z2 + 1)", "z1^3; z2^2", "z1^2 - z1*z2; z2^2 - 1/4*z2",
    "z1^2 - 1/4; z2^2 - 1/9", "(z1*z2 - 1)^2*(z1 - 1/2)", "z1^2*z2; z1*z2^2", "z1^2 + z2^2; z1*z2",
    "(z1 + z2)^2; z2^3", "z1 - z2^2", "z2^2 - z1; z1^2", "z1^4; z1*z2; z2^3", "(z1 - 1)^2*(z2 - 2)",
    "z1*(z1 - 1/3); z1*z2", "z1^2 + 2*z1 - 1", "(z1 - 1/2*i)^2; z2 - i", "z1^2*(z1 - z2)", "z1^3 - z2^2; z2^3",
]


def test_groebner_examples():
    assert list(groebner(I_("z1^2; z1*z2"))) == list(groebner(I_("z1*z2; z1^2")))
    assert set(groebner(I_("z1^2; z1*z2"))) == {P("z1^2"), P("z1*z2")}
    assert list(groebner(I_("z1 - 1/2; z2*(z1 - 1/2)"))) == [P("z1 - 1/2")]
    assert groebner(I_("z1; z2; 1")).is_unit()


@pytest.mark.parametrize("text", RADICAL_CORPUS)
def test_groebner_idempotent_and_buchberger(text):
    gb = groebner(I_(text))
    assert check_buchberger(gb)
    assert list(groebner(Ideal(list(gb)))) == list(gb)


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        groebner(Ideal([P("z1^7*z2^3 - z2^9 + z1"), P("z2^8*z1^2 - z1^9 + 3*z2"), P("z1^5*z2^5 - 2")], term_cap=50))


def test_member_examples():
    assert member(P("z1^2*z2"), I_("z1^2; z1*z2"))[0]
    ok, nf = member(Poly.one(), I_("z1 - 1/2; z2"))
    assert not ok and nf == Poly.one()
    f = P("(z1*z2 - 1)*(z1 - 1/2)")
    assert member(f, Ideal([f]))[0]


def test_colon_examples():
    assert colon(I_("(z1*z2 - 1)*(z1 - 1/2)"), P("z1*z2 - 1")) == I_("z1 - 1/2")
    assert colon(I_("z1"), P("z2")) == I_("z1")
    I = I_("z1^2; z2*z1 - z2")
    assert colon(I, Poly.one()) == I
    with pytest.raises(DomainError):
        colon(I, Poly.zero())


@pytest.mark.parametrize("text", RADICAL_CORPUS)
def test_colon_members(text):
    I = I_(text)
    f = P("z1 + 2*z2")
    for g in groebner(colon(I, f)):
        assert I.contains(g * f)


def test_radical_examples():
    assert radical(I_("(z1 - z2)^2")) == I_("z1 - z2")
    assert radical(I_("z1^2; z2")) == I_("z1; z2")
    prime = I_("z1 - 1/2; z2 - 1/3")
    assert radical(prime) == prime


@pytest.mark.parametrize("text", RADICAL_CORPUS)
def test_radical_invariants(text):
    I = I_(text)
    r = radical(I)
    assert radical(r) == r
    assert all(r.contains(g) for g in I.generators)


def test_intersect_examples():
    assert intersect(I_("z1"), I_("z2")) == I_("z1*z2")
    I = I_("z1^2 - z2; z2^2")
    assert intersect(I, Ideal.unit()) == I
    assert intersect(I_("z1 - 1/2"), I_("z1 - 1/2; z2")) == I_("z1 - 1/2")


def test_decompose_examples():
    dec = decompose(I_("(z1*z2 - 1)*(z1 - 1/2)"))
    assert sorted(str(f) for f, _ in dec.curve_factors) == ["z1 - 1/2", "z1*z2 - 1"]
    assert all(k == 1 for _, k in dec.curve_factors)
    assert not dec.point_components

    dec = decompose(I_("z1 - 1/3; z2 + 1/5"))
    assert len(dec.point_components) == 1
    pc = dec.point_components[0]
    assert pc.multiplicity == 1 and abs(pc.point[0] - 1 / 3) < 1e-12 and abs(pc.point[1] + 0.2) < 1e-12

    dec = decompose(I_("z1^2; z2"))
    pc = dec.point_components[0]
    assert pc.multiplicity == 2 and sorted(pc.staircase) == [(0, 0), (1, 0)]


@pytest.mark.parametrize("parts", [
    ["z1 - 1/2; z2", "z1; z2 - 1/3"],
    ["z1^2; z2", "z1 - 1; z2 - 1"],
    ["(z1 - 1/4)^2; z2 - 1/4", "z1 + z2; z2^2", "z1 - 2; z2 + 1/3"],
])
def test_decompose_reassembles_intersections(parts):
    ideals = [I_(t) for t in parts]
    I = ideals[0]
    for J in ideals[1:]:
        I = intersect(I, J)
    dec = decompose(I)
    assert reassemble(dec) == I
    assert sum(pc.multiplicity for pc in dec.point_components) == len(groebner(I).standard_monomials())


@pytest.mark.parametrize("curve, points", [
    ("z1 - z2", "z1 - 1/2; z2 - 1/3"),
    ("z1^2*(z2 - 1)", "z1 - 3; z2"),
    ("(z1*z2 - 1)^2", "z1^2; z2 - 1/2"),
])
def test_decompose_reassembles_products(curve, points):
    I = Ideal([P(curve) * g for g in groebner(I_(points))])
    dec = decompose(I)
    assert reassemble(dec) == I


@given(nonzero(polys(2, 3)), nonzero(polys(2, 3)))
def test_intersection_is_contained(a, b):
    I, J = Ideal([a]), Ideal([b])
    K = intersect(I, J)
    for g in groebner(K):
        assert I.contains(g) and J.contains(g)
    assert K.contains(a * b)


@given(nonzero(polys(2, 3)), nonzero(polys(2, 3)))
def test_groebner_basis_property(a, b):
    gb = groebner(Ideal([a, b]))
    assert is_groebner(list(gb)) and check_buchberger(gb)
    assert all(gb.normal_form(g).is_zero() for g in (a, b))
