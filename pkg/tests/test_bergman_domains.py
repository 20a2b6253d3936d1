import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hardy_closure.bergman_domains import (
    CONVERGED,
    DIVERGING,
    ReinhardtDomain,
    ball_density_series,
    ball_kernel,
    ball_monomial_norm_sq,
    beta,
    beta_quadrature,
    lemma41_partial,
    lemma41_series,
    minorant_check,
    monte_carlo_ball_norm_sq,
    odd_subseries_partial,
    reinhardt_density_series,
    reinhardt_monomial_norm_sq,
)
from hardy_closure.poly_core.poly import DomainError


@pytest.mark.parametrize("r, s", [(1, 1), (2, 3), (4, 7), (5, 5), (1, 10)])
def test_beta_integer_factorials(r, s):
    exact = math.factorial(r - 1) * math.factorial(s - 1) / math.factorial(r + s - 1)
    assert abs(beta(r, s) - exact) <= 1e-14 * exact


@given(st.floats(0.2, 30), st.floats(0.2, 30))
@settings(max_examples=60)
def test_beta_matches_quadrature(r, s):
    b = beta(r, s)
    assert abs(b - beta_quadrature(r, s)) <= 1e-10 * b


def test_beta_large_arguments_and_domain():
    assert beta(100, 100) > 0 and math.isfinite(beta(200, 3))
    assert abs(beta(200, 3) - 2 / (200 * 201 * 202)) < 1e-12 * beta(200, 3)
    with pytest.raises(DomainError):
        beta(0, 1)


@given(st.floats(0.5, 20), st.floats(0.5, 20))
def test_beta_decreasing_in_each_argument(r, s):
    assert beta(r + 0.5, s) < beta(r, s)
    assert beta(r, s + 0.5) < beta(r, s)


@pytest.mark.parametrize("a, P, value", [(Fraction(1, 2), 10, 11), (Fraction(1, 3), 5, 6),
                                         (Fraction(0), 100, 101), (Fraction(1), 3, 4)])
def test_binomial_partial_sums(a, P, value):
    assert lemma41_partial(a, P) == value


@given(st.fractions(0, 1, max_denominator=12), st.integers(0, 25))
@settings(max_examples=30)
def test_binomial_partial_sum_is_p_plus_one(a, P):
    assert lemma41_partial(a, P) == P + 1


def test_binomial_series_diverges():
    d = lemma41_series(0.3, 2000)
    assert d.classification == DIVERGING
    with pytest.raises(DomainError):
        lemma41_partial(Fraction(3, 2), 4)


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(1, 3), Fraction(4, 5)])
def test_odd_subseries_exact_and_float_agree(a):
    exact = odd_subseries_partial(a, 40, exact=True)
    assert abs(float(exact) - odd_subseries_partial(a, 40)) < 1e-10 * float(exact)


def test_odd_subseries_exceeds_threshold():
    value = odd_subseries_partial(0.5, 2002)
    assert value > 1e3
    assert abs(value - 1000.5) < 1e-6
    assert odd_subseries_partial(0.0, 50) == 0.0


def test_ball_norms_match_reinhardt_formula():
    dom = ReinhardtDomain(2, 2)
    for a1, a2 in [(0, 0), (1, 0), (2, 3), (5, 1)]:
        x, y = ball_monomial_norm_sq(a1, a2), reinhardt_monomial_norm_sq(dom, a1, a2)
        assert abs(x - y) < 1e-13 * x
    assert abs(ball_monomial_norm_sq(0, 0) - math.pi ** 2 / 2) < 1e-15


@pytest.mark.parametrize("a1, a2", [(0, 0), (1, 0), (1, 1), (2, 1)])
def test_ball_norms_monte_carlo(a1, a2):
    est, err = monte_carlo_ball_norm_sq(a1, a2, 200000, seed=7)
    assert abs(est - ball_monomial_norm_sq(a1, a2)) <= 5 * err + 1e-12


@pytest.mark.parametrize("w", [(0.3, 0.2), (0.5, 0.5j), (0.1, 0.8)])
def test_ball_series_is_kernel(w):
    d = ball_density_series(w, 4000)
    assert d.classification == CONVERGED and d.location == "interior"
    assert abs(d.total - ball_kernel(w)) < 1e-9 * ball_kernel(w)
    p = reinhardt_density_series(ReinhardtDomain(2, 2), w, 4000)
    assert abs(p.total / math.pi ** 4 - ball_kernel(w)) < 1e-9 * ball_kernel(w)


def test_ball_boundary_diverges():
    d = ball_density_series((0.6, 0.8), 10000)
    assert d.location == "boundary" and d.classification == DIVERGING
    assert d.density_verdict == "dense"


BOUNDARY = [
    (1, 1, (0.5, 0.5)),
    (2, 2, (0.6, 0.8)),
    (1, 2, (0.36, 0.8)),
    (3, 1, (0.5, 0.875)),
    (0.5, 0.5, (0.25, 0.25)),
]


@pytest.mark.parametrize("p, q, w", BOUNDARY)
@pytest.mark.parametrize("variant", ["prop41_plus1", "lemma42_plus2"])
def test_reinhardt_boundary_diverges(p, q, w, variant):
    d = reinhardt_density_series(ReinhardtDomain(p, q), w, 10000, variant)
    assert d.location == "boundary"
    assert d.classification == DIVERGING
    sums = [v for _, v in d.checkpoints]
    assert all(b >= a for a, b in zip(sums, sums[1:]))


@pytest.mark.parametrize("p, q, w", [(1, 1, (0.3, 0.3)), (2, 2, (0.5, 0.5)), (1, 2, (0.2, 0.6)),
                                     (0.5, 0.5, (0.1, 0.1))])
def test_reinhardt_interior_converges(p, q, w):
    a = reinhardt_density_series(ReinhardtDomain(p, q), w, 10000)
    b = reinhardt_density_series(ReinhardtDomain(p, q), w, 10000, "lemma42_plus2")
    assert a.classification == b.classification == CONVERGED
    assert a.location == "interior" and a.density_verdict == "not dense"
    assert a.tail_bound < 1e-10


def test_exterior_point_tagged():
    d = reinhardt_density_series(ReinhardtDomain(1, 1), (0.7, 0.7), 2000)
    assert d.location == "exterior" and d.classification == DIVERGING


def test_series_domain_errors():
    with pytest.raises(DomainError):
        ReinhardtDomain(0, 1)
    with pytest.raises(DomainError):
        reinhardt_density_series(ReinhardtDomain(1, 1), (0.5, 0.5), 100, "nope")
    with pytest.raises(DomainError):
        ball_kernel((0.6, 0.8))


@pytest.mark.parametrize("p, q, w", [(1, 1, (0.5, 0.5)), (2, 2, (0.6, 0.8)), (2, 1, (0.6, 0.64))])
def test_minorant_dominated(p, q, w):
    rec = minorant_check(ReinhardtDomain(p, q), w, 300)
    assert rec.injective and rec.holds


def test_minorant_matching_not_injective_below_one():
    rec = minorant_check(ReinhardtDomain(0.5, 0.5), (0.25, 0.25), 200)
    assert not rec.injective
