from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import laurent_polys, naive_eval, nonzero_rationals, polys, rationals
from toroidal.errors import ConstantTermZero, EmptyPolynomial, SingularSystem
from toroidal.exact import (LaurentPoly, expand_inverse, matrix_rank, poly_gcd, poly_lcm,
                            poly_roots_multiplicity_free, reduced_nonzero_part, scalar,
                            solve_linear_system, strip_monomial_factor)
from toroidal.linear import Vec

X = LaurentPoly.x()


def P(*dense):
    return LaurentPoly.from_dense(dense)


# --- scalars ------------------------------------------------------------------

def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(ValueError):
        scalar("0.5")
    assert scalar("3/4") == Fraction(3, 4)
    assert scalar(-2) == Fraction(-2)


# --- Laurent polynomials -------------------------------------------------------

@given(laurent_polys(), laurent_polys(), nonzero_rationals)
def test_ring_ops_agree_with_pointwise_evaluation(p, q, t):
    # independent oracle: evaluate both factors at t
    pe, qe = naive_eval(dict(p.items()), t), naive_eval(dict(q.items()), t)
    assert (p * q)(t) == pe * qe
    assert (p + q)(t) == pe + qe
    assert (p - q)(t) == pe - qe


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p


@given(laurent_polys())
def test_json_round_trip(p):
    assert LaurentPoly.from_json(p.to_json()) == p


@given(polys(), polys())
def test_divmod_reconstructs(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


def test_strip_monomial_factor_examples():
    assert strip_monomial_factor(X ** 2 * P(1, -1)) == (2, P(1, -1))
    assert strip_monomial_factor(LaurentPoly({-1: 1, 0: 1})) == (-1, P(1, 1))
    assert strip_monomial_factor(LaurentPoly.monomial(3, 3)) == (3, LaurentPoly.constant(3))
    with pytest.raises(EmptyPolynomial):
        strip_monomial_factor(LaurentPoly())


@given(laurent_polys(nonzero=True))
def test_strip_monomial_factor_property(p):
    s, q = strip_monomial_factor(p)
    assert q.coeff(0) != 0 and q.is_polynomial()
    assert q.shift(s) == p


def test_expand_inverse_examples():
    assert expand_inverse(P(1, -1), 3).coefficients == (1, 1, 1, 1)
    assert expand_inverse(P(1), 5).coefficients == (1, 0, 0, 0, 0, 0)
    assert expand_inverse(P(1, -5, 6), 2).coefficients == (1, 5, 19)
    with pytest.raises(ConstantTermZero):
        expand_inverse(X, 3)
    with pytest.raises(EmptyPolynomial):
        expand_inverse(LaurentPoly(), 3)


@given(polys(), st.integers(0, 8))
def test_expand_inverse_multiplies_back_to_one(p, w):
    if p.coeff(0) == 0:
        p = p + 1
    inv = expand_inverse(p, w)
    assert inv.times_poly(p).coefficients == (1,) + (0,) * w


@given(nonzero_rationals, st.integers(0, 7))
def test_expand_inverse_geometric_oracle(c, w):
    # 1/(1 - c x) = sum c^k x^k
    assert expand_inverse(P(1, -c), w).coefficients == tuple(c ** k for k in range(w + 1))


def test_multiplicity_free_examples():
    assert poly_roots_multiplicity_free(LaurentPoly.from_roots([2, 3]))
    assert not poly_roots_multiplicity_free(LaurentPoly.from_roots([2, 2]))
    assert poly_roots_multiplicity_free(X ** 3 * (X - 5))
    with pytest.raises(EmptyPolynomial):
        poly_roots_multiplicity_free(LaurentPoly())


@given(st.lists(nonzero_rationals, min_size=1, max_size=4), st.integers(0, 3))
def test_multiplicity_free_matches_root_list(roots, zeros):
    p = LaurentPoly.from_roots(roots) * X ** zeros
    assert poly_roots_multiplicity_free(p) == (len(set(roots)) == len(roots))
    assert reduced_nonzero_part(p) == LaurentPoly.from_roots(sorted(set(roots)))


@given(st.lists(nonzero_rationals, max_size=3), st.lists(nonzero_rationals, max_size=3))
def test_gcd_lcm_from_roots(a, b):
    pa, pb = LaurentPoly.from_roots(a), LaurentPoly.from_roots(b)
    common = []
    rest = list(b)
    for r in a:
        if r in rest:
            rest.remove(r)
            common.append(r)
    assert poly_gcd(pa, pb) == LaurentPoly.from_roots(common)
    assert poly_lcm(pa, pb) * poly_gcd(pa, pb) == pa * pb


# --- linear algebra --------------------------------------------------------------

@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(rationals, min_size=3, max_size=3))
def test_solve_resubstitution(A, x):
    b = [sum((A[i][j] * x[j] for j in range(3)), Fraction(0)) for i in range(3)]
    if matrix_rank(A) < 3:
        with pytest.raises(SingularSystem):
            solve_linear_system(A, b)
    else:
        assert solve_linear_system(A, b) == x


def test_solve_vector_valued_rhs():
    A = [[1, 1], [1, 2]]
    c1, c2 = Vec({"a": 1}), Vec({"b": 3, "a": -1})
    sol = solve_linear_system(A, [c1 + c2, c1 + 2 * c2])
    assert sol == [c1, c2]
