import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toroidal.errors import (IndexOutOfRange, MissingRestrictionBound, MissingWeightData,
                             NotWithinValidWindow, RankMismatch, ZeroPoint)
from toroidal.exact import LaurentPoly
from toroidal.formal import ExponentWindow, action_series
from toroidal.lie import G, K0, Ki, sl3
from toroidal.linear import Vec
from toroidal.modules import (EvalModule, EvalPoint, FiniteIrrep, InducedModule,
                              RestrictedEvalModule, TensorModule, defining_module, eval_action,
                              eval_annihilator, nilpotency_check, representation_check,
                              weight_space_check)

E, F, H = 0, 1, 2


# --- oracles ---------------------------------------------------------------------

def irrep_matrix(m, a):
    """Matrix of e/f/h on V(m) straight from the defining formulas (rows = output)."""
    M = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
    for k in range(m + 1):
        if a == H:
            M[k][k] = m - 2 * k
        elif a == F and k < m:
            M[k + 1][k] = 1
        elif a == E and k > 0:
            M[k - 1][k] = k * (m - k + 1)
    return M


def tensor_action_oracle(ms, points, a, n0, n, idx):
    """Image of the basis tuple ``idx`` (indices k_j) under a(n0, n), as {tuple: coeff}."""
    out = {}
    for j, (m, z) in enumerate(zip(ms, points)):
        w = Fraction(z[0]) ** n0
        for zi, ni in zip(z[1:], n):
            w *= Fraction(zi) ** ni
        M = irrep_matrix(m, a)
        for row in range(m + 1):
            c = M[row][idx[j]]
            if c:
                t = idx[:j] + (row,) + idx[j + 1:]
                out[t] = out.get(t, 0) + w * c
    return {t: c for t, c in out.items() if c}


def labels_of(idx):
    return tuple(f"v{k}" for k in idx)


# --- finite-dimensional pieces ------------------------------------------------------

@pytest.mark.parametrize("m", range(5))
def test_irrep_relations_and_formulas(m):
    V = FiniteIrrep(m)
    assert V.check_relations()
    for a in (E, F, H):
        assert V.matrix(a) == irrep_matrix(m, a)


def test_defining_module_sl3():
    assert defining_module(sl3()).check_relations()


def test_eval_point_rejects_zero():
    with pytest.raises(ZeroPoint):
        EvalPoint((1, 0))


# --- evaluation modules ---------------------------------------------------------------

def test_eval_action_examples():
    V1 = FiniteIrrep(1)
    assert eval_action([V1], [(2, 3)], G(E, 1, (1,)), Vec.basis(("v1",))) == Vec({("v0",): 6})
    assert eval_action([V1], [(2, 3)], K0((4,)), Vec.basis(("v1",))).is_zero()
    out = eval_action([V1, V1], [(1, 1), (2, 1)], G(H, 1, (0,)), Vec.basis(("v0", "v0")))
    assert out == Vec({("v0", "v0"): 3})


def test_eval_action_errors():
    V1 = FiniteIrrep(1)
    with pytest.raises(RankMismatch):
        eval_action([V1], [(2, 3)], G(E, 1, (1, 1)), Vec.basis(("v1",)))
    with pytest.raises(IndexOutOfRange):
        eval_action([V1, V1], [(2, 3)], G(E, 1, (1,)), Vec.basis(("v1", "v1")))
    with pytest.raises(RankMismatch):
        EvalModule([(V1, (1, 2)), (V1, (1, 2, 3))])


points = st.tuples(st.fractions(1, 5, max_denominator=3), st.fractions(-4, -1, max_denominator=2))


@settings(max_examples=40)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=3), st.data())
def test_eval_action_matches_kronecker_oracle(ms, data):
    pts = [data.draw(points) for _ in ms]
    W = EvalModule([(FiniteIrrep(m), p) for m, p in zip(ms, pts)])
    a = data.draw(st.sampled_from([E, F, H]))
    n0, n1 = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    for idx in itertools.product(*(range(m + 1) for m in ms)):
        got = W.apply(G(a, n0, (n1,)), Vec.basis(labels_of(idx)))
        want = {labels_of(t): c for t, c in tensor_action_oracle(ms, pts, a, n0, (n1,), idx).items()}
        assert got == Vec(want)


def test_eval_annihilator_examples():
    p0, p1 = eval_annihilator([(2, 3)])
    assert p0 == LaurentPoly.from_roots([2]) and p1 == LaurentPoly.from_roots([3])
    p0, p1 = eval_annihilator([(1, 1), (2, 1)])
    assert p0 == LaurentPoly.from_roots([1, 2]) and p1 == LaurentPoly.from_roots([1, 1])
    (p0, _), = [eval_annihilator([(5, 7), (5, 7)])]
    assert p0 == LaurentPoly.from_roots([5, 5])


@pytest.mark.parametrize("pts", [[(2, 3)], [(1, 1), (2, 1)], [(5, 7), (5, 7)], [(2, -1), (Fraction(1, 2), 3), (-3, 3)]])
def test_eval_annihilation_coefficientwise(pts):
    W = EvalModule([(FiniteIrrep(1), p) for p in pts])
    polys = eval_annihilator(pts)
    reduced = [LaurentPoly.from_roots(sorted({p[i] for p in pts})) for i in range(2)]
    window = ExponentWindow.cube(-3, 3, 1)
    for lab in W.basis():
        for a in (E, F, H):
            alpha = action_series(W, a, Vec.basis(lab))
            for i in range(2):
                for p in (polys[i], reduced[i]):
                    assert alpha.times_poly(p, i).vanishes_on(window)


def test_center_trivial_on_eval():
    W = EvalModule([(FiniteIrrep(2), (2, 3)), (FiniteIrrep(1), (1, -1))])
    for lab in W.basis():
        assert W.apply(K0((2,)), Vec.basis(lab)).is_zero()
        assert W.apply(Ki(1), Vec.basis(lab)).is_zero()


def test_weight_space_check():
    W = EvalModule([(FiniteIrrep(1), (2, 3))])
    assert weight_space_check(W)
    assert W.apply(G(H, 0, (0,)), Vec.basis(("v0",))) == Vec.basis(("v0",))
    induced = InducedModule(FiniteIrrep(0), 1, 3)
    assert weight_space_check(induced, (0, 0))

    class Broken(EvalModule):
        def _act(self, key, label):
            if isinstance(key, K0):
                return Vec.basis(("v1",) if label == ("v0",) else ("v0",))
            return super()._act(key, label)

    assert not weight_space_check(Broken([(FiniteIrrep(1), (2, 3))]))

    class NoWeights(EvalModule):
        def weight_of(self, label):
            return None

    with pytest.raises(MissingWeightData):
        weight_space_check(NoWeights([(FiniteIrrep(1), (2, 3))]))


# --- induced modules ----------------------------------------------------------------

def colored_partitions(colors, n):
    """Oracle: number of multisets of (part, color) with parts summing to n."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for _ in range(colors):
            for t in range(part, n + 1):
                ways[t] += ways[t - part]
    return ways


@pytest.mark.parametrize("depth", range(6))
def test_induced_graded_dims(depth):
    V = InducedModule(FiniteIrrep(0), 1, depth)
    assert V.graded_dims() == colored_partitions(3, depth)


def test_induced_examples():
    V0 = InducedModule(FiniteIrrep(0), 1, 0)
    assert len(V0.basis()) == 1
    vac = Vec.basis(V0.vacuum)
    for a in (E, F, H):
        for n0 in range(0, 4):
            assert V0.apply(G(a, n0, ()), vac).is_zero()
    V = InducedModule(FiniteIrrep(0), 1, 2)
    assert V.graded_dims() == [1, 3, 9]
    deg1 = {V.label_str(b) for b in V.basis() if V.degree(b) == 1}
    assert deg1 == {"e(-1)vac", "f(-1)vac", "h(-1)vac"}
    fv = V.apply(G(F, -1, ()), Vec.basis(V.vacuum))
    assert V.apply(G(E, 1, ()), fv) == Vec.basis(V.vacuum)


def test_induced_level_scales_central_term():
    V = InducedModule(FiniteIrrep(0), Fraction(5, 2), 2)
    hv = V.apply(G(H, -1, ()), Vec.basis(V.vacuum))
    # [h(1), h(-1)] = 1 * <h,h> * level = 5
    assert V.apply(G(H, 1, ()), hv) == 5 * Vec.basis(V.vacuum)


def test_strict_application_refuses_to_leave_window():
    V = InducedModule(FiniteIrrep(0), 1, 2)
    w = V.apply(G(F, -2, ()), Vec.basis(V.vacuum))
    with pytest.raises(NotWithinValidWindow):
        V.apply(G(E, -1, ()), w, strict=True)
    # projection keeps only stored degrees
    assert V.apply(G(E, -1, ()), w).is_zero()


def test_truncation_consistency():
    small, big = InducedModule(FiniteIrrep(1), 1, 3), InducedModule(FiniteIrrep(1), 1, 5)
    for lab in small.basis():
        for a in (E, F, H):
            for n0 in range(-2, 4):
                if small.degree(lab) - n0 <= small.depth:
                    assert small.apply(G(a, n0, ()), Vec.basis(lab)) == big.apply(G(a, n0, ()), Vec.basis(lab))


@pytest.mark.parametrize("U", [FiniteIrrep(0), FiniteIrrep(1)], ids=["V0", "V1"])
def test_induced_representation_property(U):
    V = InducedModule(U, 2, 4)
    keys = [G(a, n, ()) for a in (E, F, H) for n in range(-2, 3)] + [K0(())]
    pairs = list(itertools.combinations(keys, 2))
    vecs = [Vec.basis(b) for b in V.basis() if V.degree(b) <= 0]
    assert representation_check(V, pairs, vecs) == []


def test_induced_restrictedness():
    V = InducedModule(FiniteIrrep(1), 1, 4)
    for lab in V.basis():
        for a in (E, F, H):
            N = V.restriction_bound(a, (), lab)
            for n0 in range(N + 1, N + 6):
                assert V.apply(G(a, n0, ()), Vec.basis(lab)).is_zero()


# --- restricted evaluation and tensor modules ---------------------------------------------

def test_restricted_eval_examples():
    I = InducedModule(FiniteIrrep(0), 1, 3)
    R = RestrictedEvalModule([(I, (2,))])
    v = Vec.basis((I.vacuum,))
    assert R.apply(K0((3,)), v) == 8 * v
    assert R.apply(Ki(1), v).is_zero()
    for a in (E, F, H):
        assert R.apply(G(a, 2, (1,)), v).is_zero()


def test_restricted_eval_needs_bounds():
    with pytest.raises(MissingRestrictionBound):
        RestrictedEvalModule([(EvalModule([(FiniteIrrep(1), (2,))]), (3,))])
    with pytest.raises(RankMismatch):
        RestrictedEvalModule([(EvalModule([(FiniteIrrep(1), (2, 3))]), (3,))])


def test_restricted_eval_two_factors_action():
    I = InducedModule(FiniteIrrep(0), 1, 2)
    R = RestrictedEvalModule([(I, (2, 3)), (I, (5, 7))])
    fv = (((1, 1),), "v0")
    w = Vec.basis((fv, I.vacuum))
    out = R.apply(G(E, 1, (1, 2)), w)
    # only the first slot sees e(1): 2^1 * 3^2 * vac (x) vac
    assert out == Vec({(I.vacuum, I.vacuum): 18})
    assert R.apply(K0((1, 1)), w) == (6 + 35) * w


def test_nilpotency_examples():
    for m in range(4):
        W = EvalModule([(FiniteIrrep(m), (2, 3))])
        for lab in W.basis():
            k = nilpotency_check(W, "e", 1, (2,), Vec.basis(lab), 10)
            assert k is not None and k <= m + 1
    W = EvalModule([(FiniteIrrep(1), (2, 3))])
    assert nilpotency_check(W, "e", 0, (0,), Vec.basis(("v0",)), 3) == 1
    T = EvalModule([(FiniteIrrep(1), (1, 1)), (FiniteIrrep(1), (1, 1))])
    assert nilpotency_check(T, "e", 0, (0,), Vec.basis(("v1", "v1")), 5) == 3
    assert nilpotency_check(T, "e", 0, (0,), Vec.basis(("v1", "v1")), 2) is None
    with pytest.raises(IndexOutOfRange):
        nilpotency_check(T, "h", 0, (0,), Vec.basis(("v1", "v1")), 2)
    I = InducedModule(FiniteIrrep(0), 1, 2)
    with pytest.raises(NotWithinValidWindow):
        nilpotency_check(I, "e", -1, (), Vec.basis(I.vacuum), 5)


def shipped_modules():
    I = InducedModule(FiniteIrrep(0), 1, 4)
    I1 = InducedModule(FiniteIrrep(1), Fraction(1, 2), 3)
    return {
        "eval": EvalModule([(FiniteIrrep(1), (2, 3)), (FiniteIrrep(2), (-1, Fraction(1, 2)))]),
        "eval-sl3": EvalModule([(defining_module(sl3()), (2, 3))]),
        "restricted": RestrictedEvalModule([(I, (2,)), (I1, (3,))]),
        "tensor": TensorModule([RestrictedEvalModule([(I, (2,))]), EvalModule([(FiniteIrrep(1), (3, 5))])]),
    }


@pytest.mark.parametrize("name", ["eval", "eval-sl3", "restricted", "tensor"])
def test_representation_property_sampled(name):
    W = shipped_modules()[name]
    rng = random.Random(3)
    keys = [G(a, rng.randint(-1, 2), (rng.randint(-2, 2),)) for a in range(W.g.dimension) for _ in range(3)]
    keys += [K0((1,)), Ki(1)]
    pairs = [tuple(rng.sample(keys, 2)) for _ in range(25)]
    vecs = [Vec.basis(b) for b in W.basis() if W.degree(b) <= 1][:8]
    assert representation_check(W, pairs, vecs) == []


def test_tensor_witness_is_mixed(mixed):
    wit = mixed.witness()
    assert wit.category == "C_tau"
    assert wit.p0 == LaurentPoly.from_roots([3])
    assert wit.p[0] == LaurentPoly.from_roots([2, 5])
