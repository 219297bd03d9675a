"""Category membership, the restricted/evaluation splitting of an action, and
Vandermonde separation of tensor-slot actions.

Every check here is relative to a witness, an exponent window and a sample of
vectors; none of them claims membership beyond what it inspected.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NoTruncationBound, NotInCategory, RankMismatch, ZeroPoint
from .exact import LaurentPoly, reduced_nonzero_part, scalar, solve_linear_system, strip_monomial_factor
from .formal import ExponentWindow, action_series, psi_project, psi_weights
from .lie import G, K0, Ki, key_str
from .linear import Vec
from .modules import ModuleSpec, nilpotency_check
from .witness import CategoryWitness

RESTRICTION_MARGIN = 5


# --- membership -------------------------------------------------------------

def _exponent(n0, n):
    return [-n0 - 1] + [-v - 1 for v in n]


class _Collector:
    def __init__(self, W: ModuleSpec, limit: int):
        self.W = W
        self.limit = limit
        self.items: list[dict] = []
        self.checked = 0

    def compare(self, what: str, w: Vec, modes, lhs: Vec, rhs: Vec | None = None):
        self.checked += 1
        rhs = Vec() if rhs is None else rhs
        if lhs != rhs and len(self.items) < self.limit:
            self.items.append({
                "key": what,
                "vector": self.W.vec_str(w),
                "exponent": None if modes is None else _exponent(*modes),
                "lhs": self.W.vec_str(lhs),
                "rhs": self.W.vec_str(rhs),
            })
        return lhs == rhs

    def fail(self, what: str, w: Vec, reason: str):
        self.checked += 1
        if len(self.items) < self.limit:
            self.items.append({"key": what, "vector": self.W.vec_str(w), "exponent": None,
                               "lhs": reason, "rhs": None})


def _annihilation(col: _Collector, series, p: LaurentPoly, var: int, name: str, w: Vec, window: ExponentWindow):
    prod = series.times_poly(p, var)
    for n0, n in window.modes():
        col.compare(f"p{var}(x{var})*{name}", w, (n0, n), prod.coeff(n0, n))


def check_membership(W: ModuleSpec, witness: CategoryWitness, window: ExponentWindow,
                     vectors: Sequence[Vec], max_counterexamples: int = 5) -> dict:
    """Check the category axioms named by ``witness`` on ``vectors`` over ``window``.

    * E_tau / E_tau_prime: ``p_i(x_i) a(x0, x) w == 0`` for i = 0..r.
    * R_tilde: ``a(n0, n) w == 0`` beyond the module's restriction bound (checked
      on a margin of modes), plus ``p_i(x_i)`` annihilation of a- and K0-series, i >= 1.
    * C_tau: the same with ``p0(x0) a(x0, x) w`` in place of ``a(x0, x) w`` for
      the truncation part.
    """
    if witness.rank != W.rank or window.rank != W.rank:
        raise RankMismatch("witness, window and module ranks must agree")
    col = _Collector(W, max_counterexamples)
    g = W.g
    zero_n = (0,) * W.rank
    cat = witness.category
    for w in vectors:
        for a in range(g.dimension):
            name = f"{g.labels[a]}(x0,x)"
            alpha = action_series(W, a, w)
            if cat in ("E_tau", "E_tau_prime"):
                for i in range(W.rank + 1):
                    _annihilation(col, alpha, witness.poly(i), i, name, w, window)
                continue
            # truncation in x0
            if cat == "R_tilde":
                bound = W.vector_restriction_bound(a, zero_n, w) if W.restricted else None
                series = alpha
            else:
                # p0 = x^s q with q(0) != 0; the monomial only shifts modes
                q = strip_monomial_factor(witness.p0)[1]
                try:
                    bound = alpha.truncation_floor(q)
                except NoTruncationBound:
                    bound = None
                series = alpha.times_poly(q)
                name = f"p0(x0)*{name}"
            if bound is None:
                col.fail(name, w, "no certified x0 truncation bound")
            else:
                for n0 in range(bound + 1, bound + RESTRICTION_MARGIN + 1):
                    for n in window_x_modes(window):
                        col.compare(name, w, (n0, n), series.coeff(n0, n))
            for i in range(1, W.rank + 1):
                _annihilation(col, alpha, witness.poly(i), i, f"{g.labels[a]}(x0,x)", w, window)
        if cat in ("R_tilde", "C_tau"):
            k0 = action_series(W, "K0", w)
            for i in range(1, W.rank + 1):
                _annihilation(col, k0, witness.poly(i), i, "K0(x)", w, window)
    return {
        "category": cat,
        "witness": witness.to_json(),
        "window": window.to_json(),
        "samples": [W.vec_str(w) for w in vectors],
        "checked": col.checked,
        "pass": not col.items,
        "counterexamples": col.items,
    }


def window_x_modes(window: ExponentWindow):
    return [tuple(n) for n in itertools.product(*(range(-hi - 1, -lo) for lo, hi in window.x))]


# --- the splitting ----------------------------------------------------------

class SplitAction(ModuleSpec):
    """One half of the split action on the underlying space of ``W``."""

    def __init__(self, parent: DecomposedRep, side: str):
        super().__init__(parent.original.g, parent.original.rank)
        self.parent = parent
        self.side = side
        self.valid_window = parent.original.valid_window
        self.restricted = side == "R"

    def basis(self):
        return self.parent.original.basis()

    def degree(self, label):
        return self.parent.original.degree(label)

    def fits(self, key, label):
        return self.parent.original.fits(key, label)

    def label_str(self, label):
        return self.parent.original.label_str(label)

    def _act(self, key, label):
        W = self.parent.original
        if isinstance(key, Ki):
            return Vec()
        if isinstance(key, K0):
            return W.act(key, label) if self.side == "R" else Vec()
        tilde = self.parent.tilde(key, label)
        return tilde if self.side == "R" else W.act(key, label) - tilde

    def restriction_bound(self, a, n, label):
        if self.side != "R":
            return None
        return self.parent.floor(a, label)

    def series_floor(self, q, a, label):
        if self.side == "R":
            return self.parent.floor(a, label)
        q0 = self.parent.q_E
        return -1 if (not q0.is_constant() and q0.divides(q)) else None

    def weight_of(self, label):
        return None

    def witness(self) -> CategoryWitness:
        return self.parent.witness_R if self.side == "R" else self.parent.witness_E


@dataclass
class DecomposedRep:
    """``pi = pi_R + pi_E`` for a module with a polynomial ``p0`` witness."""

    original: ModuleSpec
    witness: CategoryWitness
    q: LaurentPoly = field(init=False)
    q_E: LaurentPoly = field(init=False)
    R: SplitAction = field(init=False)
    E: SplitAction = field(init=False)

    def __post_init__(self):
        p0 = self.witness.p0 if self.witness.p0 is not None else LaurentPoly.constant(1)
        self.q = strip_monomial_factor(p0)[1]
        self.q_E = reduced_nonzero_part(p0)
        self._series: dict = {}
        self._floors: dict = {}
        self.R = SplitAction(self, "R")
        self.E = SplitAction(self, "E")
        self.witness_R = CategoryWitness("R_tilde", None, self.witness.p)
        self.witness_E = CategoryWitness("E_tau_prime", self.q_E, tuple(reduced_nonzero_part(p) for p in self.witness.p))

    def _alpha(self, a, label):
        k = (a, label)
        s = self._series.get(k)
        if s is None:
            s = self._series[k] = action_series(self.original, a, Vec.basis(label))
        return s

    def floor(self, a, label) -> int:
        k = (a, label)
        f = self._floors.get(k)
        if f is None:
            f = self._floors[k] = self._alpha(a, label).truncation_floor(self.q)
        return f

    def tilde(self, key: G, label) -> Vec:
        return psi_project(self._alpha(key.a, label), self.q, key.n0, key.n)

    def expansion_length(self, a, label, n0) -> int:
        """Largest index t with a (possibly zero) weight in the finite psi sum."""
        return len(psi_weights(self.q, self.floor(a, label), n0)) - 1

    def pi_R(self, key, v: Vec, strict: bool = False) -> Vec:
        return self.R.apply(key, v, strict)

    def pi_E(self, key, v: Vec, strict: bool = False) -> Vec:
        return self.E.apply(key, v, strict)


def decompose_pi(W: ModuleSpec, witness: CategoryWitness, verify_window: ExponentWindow | None = None,
                 verify_vectors: Sequence[Vec] | None = None) -> DecomposedRep:
    """Split the action of ``W`` into its restricted and evaluation parts.

    With ``verify_window`` the witness is first checked on ``verify_vectors``
    (default: the whole basis) and :class:`NotInCategory` raised on failure.
    """
    if witness.rank != W.rank:
        raise RankMismatch("witness rank differs from module rank")
    if verify_window is not None:
        vecs = verify_vectors if verify_vectors is not None else [Vec.basis(b) for b in W.basis()]
        rep = check_membership(W, witness, verify_window, vecs, max_counterexamples=1)
        if not rep["pass"]:
            raise NotInCategory(f"witness fails: {rep['counterexamples'][0]}")
    return DecomposedRep(W, witness)


def g_keys(W: ModuleSpec, modes) -> list[G]:
    return [G(a, n0, tuple(n)) for a in range(W.g.dimension) for n0, n in modes]


def verify_commuting_actions(d: DecomposedRep, window: ExponentWindow, vectors: Sequence[Vec],
                             keys_R=None, keys_E=None) -> dict | None:
    """First ``(u, v, w)`` with ``pi_R(u) pi_E(v) w != pi_E(v) pi_R(u) w``, or None."""
    W = d.original
    modes = list(window.modes())
    keys_R = keys_R if keys_R is not None else g_keys(W, modes) + [K0(n) for n in window_x_modes(window)]
    keys_E = keys_E if keys_E is not None else g_keys(W, modes)
    for w in vectors:
        r_imgs = {u: d.pi_R(u, w, strict=True) for u in keys_R}
        e_imgs = {v: d.pi_E(v, w, strict=True) for v in keys_E}
        for u in keys_R:
            for v in keys_E:
                lhs = d.pi_R(u, e_imgs[v])
                rhs = d.pi_E(v, r_imgs[u])
                if lhs != rhs:
                    return {"u": key_str(W.g, u), "v": key_str(W.g, v), "w": W.vec_str(w),
                            "lhs": W.vec_str(lhs), "rhs": W.vec_str(rhs)}
    return None


# --- Vandermonde separation -------------------------------------------------

def vandermonde_matrix(points: Sequence) -> list[list[Fraction]]:
    pts = [scalar(z) for z in points]
    return [[z ** n for z in pts] for n in range(len(pts))]


def vandermonde_separate(samples, points: Sequence) -> list:
    """Solve ``samples[n] = sum_j z_j^n c_j`` (n = 0..N-1) for the ``c_j``."""
    pts = [scalar(z) for z in points]
    if not pts:
        raise ValueError("need at least one point")
    if any(z == 0 for z in pts):
        raise ZeroPoint("Vandermonde points must be nonzero")
    rhs = [samples[n] for n in range(len(pts))]
    return solve_linear_system(vandermonde_matrix(pts), rhs)


def vandermonde_recombine(contributions: Sequence, points: Sequence, n: int):
    out = 0
    for c, z in zip(contributions, points):
        out = out + scalar(z) ** n * c
    return out


# --- integrability ----------------------------------------------------------

@dataclass(frozen=True)
class TransportResult:
    k_R: int
    k_E: int
    k: int
    l: int

    @property
    def ok(self) -> bool:
        return self.k_R <= self.k * (self.l + 1) and self.k_E <= self.k * (self.l + 2)

    def to_json(self) -> dict:
        return {"k_R": self.k_R, "k_E": self.k_E, "k": self.k, "l": self.l, "pass": self.ok}


class TransportFailure(AssertionError):
    pass


def integrability_transport_check(d: DecomposedRep, a, n0: int, n: Sequence[int], w: Vec,
                                  max_k: int = 64) -> TransportResult:
    """Nilpotency orders of the split root-vector actions on ``w`` and the bounds they must obey.

    ``l`` is the longest finite psi sum used on the orbit of ``w``; ``k`` is
    the largest nilpotency order of ``a(m0, n)`` on ``w`` for m0 in [n0, n0 + l].
    """
    W = d.original
    a = W.g.index(a)
    n = tuple(n)
    k_R = nilpotency_check(d.R, a, n0, n, w, max_k)
    k_E = nilpotency_check(d.E, a, n0, n, w, max_k)
    if k_R is None or k_E is None:
        raise TransportFailure(f"split action not nilpotent within {max_k} steps")
    # orbit of w under the restricted action: longest psi expansion needed
    l, v, key = 0, w, G(a, n0, n)
    for _ in range(max(k_R, 1)):
        for lab in v:
            l = max(l, d.expansion_length(a, lab, n0))
        v = d.pi_R(key, v)
    k = 0
    for m0 in range(n0, n0 + l + 1):
        km = nilpotency_check(W, a, m0, n, w, max_k)
        if km is None:
            raise TransportFailure(f"original action a({m0}) not nilpotent within {max_k} steps")
        k = max(k, km)
    res = TransportResult(k_R, k_E, k, l)
    if not res.ok:
        raise TransportFailure(f"bounds violated: {res}")
    return res
