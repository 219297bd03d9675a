import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toroidal.errors import BasisSearchFailed, InvalidLieData, RankMismatch
from toroidal.lie import G, K0, GVec, Ki, SimpleLieData, Toroidal, ToroidalElement, sl2, sl3


# --- matrix oracle ---------------------------------------------------------------
# The bracket is recomputed from the matrix realisation and the trace form,
# independently of the stored structure constants.

def matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def as_matrix(g, x: GVec):
    n = len(g.matrices[0])
    out = [[Fraction(0)] * n for _ in range(n)]
    for k, c in x.items():
        for i in range(n):
            for j in range(n):
                out[i][j] += c * g.matrices[k][i][j]
    return out


def oracle_bracket(g, u: G, v: G):
    """Mode-summed matrix part plus central coefficients of [u, v]."""
    A, B = g.matrices[u.a], g.matrices[v.a]
    AB, BA = matmul(A, B), matmul(B, A)
    comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(AB, BA)]
    form = trace(AB)
    s0 = u.n0 + v.n0
    s = tuple(x + y for x, y in zip(u.n, v.n))
    central = {}
    if s0 == 0 and form:
        if u.n0:
            central[K0(s)] = u.n0 * form
        if not any(s):
            for i, ni in enumerate(u.n, start=1):
                if ni:
                    central[Ki(i)] = ni * form
    return (s0, s, comm), central


def split_result(g, x: ToroidalElement):
    gparts, central = {}, {}
    for k, c in x.items():
        if isinstance(k, G):
            gparts.setdefault((k.n0, k.n), GVec())
            gparts[(k.n0, k.n)] = gparts[(k.n0, k.n)] + c * GVec.basis(k.a)
        else:
            central[k] = c
    return gparts, central


@pytest.mark.parametrize("g", [sl2(), sl3()], ids=["sl2", "sl3"])
def test_bracket_matches_matrix_oracle(g):
    T = Toroidal(g, 2)
    rng = random.Random(11)
    for _ in range(300):
        u = G(rng.randrange(g.dimension), rng.randint(-3, 3), (rng.randint(-2, 2), rng.randint(-2, 2)))
        v = G(rng.randrange(g.dimension), rng.randint(-3, 3), (rng.randint(-2, 2), rng.randint(-2, 2)))
        (s0, s, comm), central = oracle_bracket(g, u, v)
        gparts, got_central = split_result(g, T.bracket_keys(u, v))
        assert got_central == central
        got = as_matrix(g, gparts.get((s0, s), GVec()))
        assert got == comm
        assert set(gparts) <= {(s0, s)}


def test_bracket_examples():
    T = Toroidal(sl2(), 1)
    assert T.bracket(T.gen("e", 1, (0,)), T.gen("f", -1, (0,))) == T.gen("h", 0, (0,)) + T.k0((0,))
    assert T.bracket(T.gen("e", 1, (1,)), T.gen("f", -1, (-1,))) == \
        T.gen("h", 0, (0,)) + T.k0((0,)) + T.k(1)
    assert T.bracket(T.k0((3,)), T.gen("e", 5, (2,))).is_zero()


def test_rank_mismatch():
    T = Toroidal(sl2(), 1)
    with pytest.raises(RankMismatch):
        T.bracket(T.gen("e", 1, (0,)), ToroidalElement.basis(G(1, 0, (0, 0))))
    with pytest.raises(RankMismatch):
        T.k(2)


def test_jacobi_examples():
    T = Toroidal(sl2(), 1)
    assert T.jacobi_check(T.gen("e", 1, (0,)), T.gen("f", 0, (0,)), T.gen("h", -1, (0,)))
    e = T.gen("e", 0, (0,))
    assert T.jacobi_check(e, e, e)


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_random_jacobi_and_antisymmetry(name):
    T = Toroidal(name, 2)
    rng = random.Random(5)
    for _ in range(40):
        u, v, w = (T.random_element(rng) for _ in range(3))
        assert T.bracket(u, v) == -T.bracket(v, u)
        assert T.jacobi_check(u, v, w)


@given(st.integers(0, 2), st.integers(0, 2), st.integers(-4, 4), st.integers(-4, 4),
       st.tuples(st.integers(-3, 3)), st.tuples(st.integers(-3, 3)))
def test_bracket_antisymmetric_on_generators(a, b, n0, m0, n, m):
    T = Toroidal(sl2(), 1)
    u, v = G(a, n0, n), G(b, m0, m)
    assert T.bracket_keys(u, v) == -T.bracket_keys(v, u)


def test_invariant_form_values():
    T = Toroidal(sl2(), 1)
    assert T.invariant_form("e", "f") == 1
    assert T.invariant_form("h", "h") == 2
    assert T.invariant_form("e", "e") == 0


@pytest.mark.parametrize("g", [sl2(), sl3()], ids=["sl2", "sl3"])
def test_form_is_trace_form(g):
    for i in range(g.dimension):
        for j in range(g.dimension):
            assert g.form[i][j] == trace(matmul(g.matrices[i], g.matrices[j]))


@pytest.mark.parametrize("g", [sl2(), sl3()], ids=["sl2", "sl3"])
def test_nilpotent_basis(g):
    T = Toroidal(g, 1)
    basis = T.nilpotent_basis()
    assert len(basis) == g.dimension
    for x in basis:
        m = as_matrix(g, x)
        assert trace(matmul(m, m)) == 0
        # isotropic, self-commuting: the top and bottom modes bracket to zero
        assert T.bracket(T.element(x, 2, (1,)), T.element(x, -2, (-1,))).is_zero()


def test_sl2_nilpotent_basis_is_e_f_and_h_plus_e_minus_f():
    g = sl2()
    got = Toroidal(g, 1).nilpotent_basis()
    assert GVec({0: 1}) in got and GVec({1: 1}) in got
    assert GVec({2: 1, 0: 1, 1: -1}) in got


def test_missing_nilpotent_basis():
    g = SimpleLieData.from_json(sl2().to_json() | {"nilpotent_basis": None})
    with pytest.raises(BasisSearchFailed):
        Toroidal(g, 1).nilpotent_basis()


def test_json_round_trip_and_validation():
    g = sl3()
    h = SimpleLieData.from_json(g.to_json())
    assert h.structure == g.structure and h.form == g.form
    bad = g.to_json()
    bad["brackets"] = [list(t) for t in bad["brackets"]]
    bad["brackets"][0][3] = "5"
    with pytest.raises(InvalidLieData):
        SimpleLieData.from_json(bad)
