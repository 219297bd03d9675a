import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from toroidal.exact import LaurentPoly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def laurent_polys(draw, lo=-3, hi=4, max_terms=4, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    coeffs = {draw(st.integers(lo, hi)): draw(nonzero_rationals) for _ in range(n)}
    p = LaurentPoly(coeffs)
    if nonzero and p.is_zero():
        p = LaurentPoly.constant(1)
    return p


@st.composite
def polys(draw, max_degree=4, nonzero=True):
    """Ordinary polynomials (non-negative exponents)."""
    coeffs = draw(st.lists(rationals, min_size=1, max_size=max_degree + 1))
    p = LaurentPoly.from_dense(coeffs)
    if nonzero and p.is_zero():
        p = LaurentPoly.constant(1)
    return p


def naive_eval(coeffs: dict, t: Fraction) -> Fraction:
    return sum((Fraction(c) * Fraction(t) ** e for e, c in coeffs.items()), Fraction(0))


@pytest.fixture(scope="session")
def mixed():
    from toroidal.suites import mixed_module
    return mixed_module()
