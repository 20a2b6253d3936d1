import numpy as np
import pytest

from hardy_closure.acceptance import CORPUS
from hardy_closure.finite_codim import (
    INFINITE,
    codimension,
    correspondence_check,
    principal_angles,
    same_subspace,
    stabilization_degree,
    truncate,
)
from hardy_closure.ideal_engine import Ideal, decompose, intersect
from hardy_closure.poly_core.poly import DomainError

Q = Ideal.parse


@pytest.mark.parametrize("text, codim", [
    ("z1; z2", 1),
    ("z1^2; z2", 2),
    ("z1^3; z2^2", 6),
    ("z1^2 - 1/4; z2^2 - 1/9", 4),
    ("z1^2 - z1*z2; z2^2 - 1/4*z2", 4),
    ("z1 - 1/2; z2 - 1/3", 1),
    ("z1 - z2", INFINITE),
    ("z1*z2 - 1", INFINITE),
])
def test_codimension(text, codim):
    assert codimension(Q(text)) == codim


def test_unit_ideal_codimension_zero():
    assert codimension(Ideal.unit()) == 0


@pytest.mark.parametrize("text, d, codim", [
    ("z1^2; z2", 2, 2), ("z1^2; z2", 3, 2), ("z1^2; z2", 4, 2),
    ("z1; z2", 3, 1),
    ("z1 - 1/2; z2 - 1/3", 4, 1),
    ("z1^3; z2^2", 2, 5), ("z1^3; z2^2", 3, 6),
])
def test_truncated_codimension(text, d, codim):
    t = truncate(Q(text), d)
    assert t.codim == codim
    assert t.dim + t.codim == len(t.monomials) == (d + 1) * (d + 2) // 2


def test_truncation_stabilizes():
    I = Q("z1^3; z2^2")
    s = stabilization_degree(I)
    assert s == 3
    assert all(truncate(I, d).codim == codimension(I) for d in range(s, s + 3))
    assert stabilization_degree(Q("z1 - z2")) is None


@pytest.mark.parametrize("text", [
    "z1; z2", "z1^2; z2", "z1^2 - z1*z2; z2^2 - 1/4*z2", "z1^3; z2^2", "z1^2 - 1/4; z2^2 - 1/9",
    "z1 - 1/2; z2 - 1/3", "z1^2 + z2^2 - 1/2; z1*z2",
])
def test_correspondence(text):
    I = Q(text)
    d = stabilization_degree(I) + 1
    rec = correspondence_check(I, d)
    assert rec.ok and rec.codim_d == rec.codimension
    assert rec.max_angle < 1e-8
    assert sum(rec.component_codims) == rec.codimension
    assert rec.exact_route_matches in (None, True)


def test_intersection_of_point_ideals():
    I = intersect(Q("z1 - 1/2; z2 - 1/3"), Q("z1; z2"))
    rec = correspondence_check(I, 3)
    assert rec.ok and rec.codimension == 2
    assert rec.enlargements == [1, 1]
    assert same_subspace(truncate(I, 3), truncate(I.reduced(), 3))


def test_principal_angles_detect_different_spaces():
    a = truncate(Q("z1; z2"), 3)
    b = truncate(Q("z1 - 1/2; z2"), 3)
    assert not same_subspace(a, b)
    assert float(np.max(principal_angles(a, b))) > 1e-3


@pytest.mark.parametrize("text, error", [
    ("z1 - z2", "infinite"),
    ("z1 - 2; z2", "bidisc"),
    ("z1 - 1; z2", "bidisc"),
])
def test_correspondence_domain_errors(text, error):
    with pytest.raises(DomainError, match=error):
        correspondence_check(Q(text), 3)


def test_finite_iff_no_curve_factor():
    assert len(CORPUS) >= 15
    for text in CORPUS:
        I = Q(text)
        finite = codimension(I) != INFINITE
        assert finite == (not decompose(I).curve_factors), text
