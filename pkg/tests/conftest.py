from fractions import Fraction

from hypothesis import settings, strategies as st

from hardy_closure.poly_core.gaussian import GaussianRational
from hardy_closure.poly_core.poly import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussian = st.builds(GaussianRational, small_fraction, small_fraction)


@st.composite
def polys(draw, max_degree=3, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        a = draw(st.integers(0, max_degree))
        b = draw(st.integers(0, max_degree - a))
        terms[(a, b)] = draw(gaussian)
    return Poly(terms)


def nonzero(strategy):
    return strategy.filter(lambda p: not p.is_zero())
