"""Verification suites behind ``toroidal verify``.

Each suite returns a JSON-ready report::

    {suite, seed, category, witness, window, samples, checks: [{name, pass, count}],
     pass, counterexamples}

Reports contain no timings or other run-dependent data, so the same
configuration always produces the same bytes.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .categories import (check_membership, decompose_pi, integrability_transport_check, g_keys,
                         vandermonde_recombine, vandermonde_separate, verify_commuting_actions)
from .errors import NotWithinValidWindow
from .exact import LaurentPoly
from .formal import (ExponentWindow, action_series, bracket_series_check, decompose_series,
                     delta_identity_check, delta_substitution_check, psi_series)
from .lie import G, K0, Ki, Toroidal, ToroidalElement, key_str
from .linear import Vec
from .modules import (EvalModule, FiniteIrrep, InducedModule, ModuleSpec, RestrictedEvalModule,
                      TensorModule, nilpotency_check)

SUITES = ("bracket-jacobi", "eq2.3-coefficients", "lemma3.2-center", "delta-identities",
          "psi-properties", "thm4.8-split", "vandermonde", "integrability")


@dataclass
class Report:
    suite: str
    seed: int
    window: dict | None = None
    category: str | None = None
    witness: dict | None = None

    def __post_init__(self):
        self.checks: list[dict] = []
        self.samples: list = []
        self.counterexamples: list[dict] = []

    def check(self, name: str, ok: bool, count: int = 1, counterexample=None) -> bool:
        self.checks.append({"name": name, "pass": bool(ok), "count": count})
        if not ok and counterexample is not None and len(self.counterexamples) < 10:
            self.counterexamples.append(dict(counterexample, check=name))
        return ok

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "category": self.category,
            "witness": self.witness,
            "window": self.window,
            "samples": self.samples,
            "checks": self.checks,
            "pass": self.passed,
            "counterexamples": self.counterexamples,
        }


def element_str(g, x: ToroidalElement) -> str:
    if x.is_zero():
        return "0"
    return " + ".join(f"{c}*{key_str(g, k)}" for k, c in x.terms())


# --- stock modules ----------------------------------------------------------

def mixed_module(depth: int = 4) -> TensorModule:
    """(induced sl2, trivial U, level 1, at z1 = 2) (x) (eval V(1) at (3, 5)); rank 1."""
    induced = InducedModule(FiniteIrrep(0), 1, depth)
    return TensorModule([RestrictedEvalModule([(induced, (2,))]), EvalModule([(FiniteIrrep(1), (3, 5))])])


def low_vectors(W: ModuleSpec, max_degree: int) -> list[Vec]:
    return [Vec.basis(b) for b in W.basis() if W.degree(b) <= max_degree]


def sample_vectors(W: ModuleSpec, rng: random.Random, count: int, max_degree: int = 2) -> list[Vec]:
    basis = [b for b in W.basis() if W.degree(b) <= max_degree]
    if len(basis) <= count:
        return [Vec.basis(b) for b in basis]
    return [Vec.basis(b) for b in sorted(rng.sample(basis, count), key=basis.index)]


def random_points(rng: random.Random, s: int, length: int) -> list[tuple[Fraction, ...]]:
    """``s`` points with pairwise distinct, nonzero coordinates in every position."""
    pool = [Fraction(p, q) for p in range(-6, 7) for q in (1, 2, 3) if p]
    pool = sorted(set(pool))
    cols = [rng.sample(pool, s) for _ in range(length)]
    return [tuple(col[j] for col in cols) for j in range(s)]


# --- suites -----------------------------------------------------------------

def suite_bracket_jacobi(algebra="sl2", rank: int = 2, lo: int = -3, hi: int = 3, seed: int = 0,
                         trials: int = 100) -> Report:
    T = Toroidal(algebra, rank)
    rep = Report("bracket-jacobi", seed, ExponentWindow.cube(lo, hi, rank).to_json())
    rng = random.Random(seed)
    bad_anti = bad_jac = None
    for _ in range(trials):
        u, v, w = (T.random_element(rng, 3, lo, hi) for _ in range(3))
        if bad_anti is None and T.bracket(u, v) != -T.bracket(v, u):
            bad_anti = {"u": element_str(T.g, u), "v": element_str(T.g, v)}
        if bad_jac is None and not T.jacobi_check(u, v, w):
            bad_jac = {"u": element_str(T.g, u), "v": element_str(T.g, v), "w": element_str(T.g, w)}
    rep.samples = [f"{trials} random triples over {T.g.name}, rank {rank}"]
    rep.check("antisymmetry", bad_anti is None, trials, bad_anti)
    rep.check("jacobi", bad_jac is None, trials, bad_jac)
    return rep


def suite_series_bracket(algebra="sl2", rank: int = 2, window: ExponentWindow | None = None, seed: int = 0) -> Report:
    T = Toroidal(algebra, rank)
    window = window or ExponentWindow((-3, 3), ((-2, 2),) * rank)
    rep = Report("eq2.3-coefficients", seed, window.to_json())
    n = T.g.dimension
    for a, b in itertools.product(range(n), repeat=2):
        bad = bracket_series_check(T, a, b, window)
        if bad is not None:
            bad = {"x": list(bad["x"]), "y": list(bad["y"]),
                   "lhs": element_str(T.g, bad["lhs"]), "rhs": element_str(T.g, bad["rhs"])}
        rep.check(f"{T.g.labels[a]},{T.g.labels[b]}", bad is None, window.size() ** 2, bad)
    return rep


def eval_tensor_family(rng: random.Random, rank: int, max_factors: int = 3, max_m: int = 2) -> list[EvalModule]:
    out = []
    for s in range(1, max_factors + 1):
        pts = random_points(rng, s, rank + 1)
        for ms in itertools.product(range(max_m + 1), repeat=s):
            out.append(EvalModule([(FiniteIrrep(m), p) for m, p in zip(ms, pts)]))
    return out


def suite_center(modules=None, rank: int = 1, lo: int = -3, hi: int = 3, seed: int = 0) -> Report:
    rng = random.Random(seed)
    modules = modules if modules is not None else eval_tensor_family(rng, rank)
    rep = Report("lemma3.2-center", seed, ExponentWindow.cube(lo, hi, rank).to_json(), "E_tau")
    total, bad = 0, None
    for W in modules:
        for lab in W.basis():
            w = Vec.basis(lab)
            keys = [K0(tuple(n)) for n in itertools.product(range(lo, hi + 1), repeat=W.rank)]
            keys += [Ki(i) for i in range(1, W.rank + 1)]
            for k in keys:
                total += 1
                img = W.apply(k, w)
                if bad is None and not img.is_zero():
                    bad = {"key": key_str(W.g, k), "vector": W.vec_str(w), "lhs": W.vec_str(img), "rhs": {}}
    rep.samples = [f"{len(modules)} modules"]
    rep.check("central elements act as zero", bad is None, total, bad)
    return rep


SUBSTITUTION_POLYS = [
    LaurentPoly.constant(1),
    LaurentPoly.x(),
    LaurentPoly.from_roots([2, -1]),
    LaurentPoly({-2: 1, 1: 3}),
    LaurentPoly({0: Fraction(1, 2), 3: -1, 5: 2}),
]
SUBSTITUTION_POINTS = [Fraction(2), Fraction(-1, 3), Fraction(5, 2)]


def suite_delta(lo: int = -5, hi: int = 5, seed: int = 0) -> Report:
    window = ExponentWindow.cube(lo, hi, 1)
    rep = Report("delta-identities", seed, window.to_json())
    for m, n in itertools.product(range(4), repeat=2):
        ok = delta_identity_check(m, n, window)
        rep.check(f"difference-derivative m={m} n={n}", ok, window.size(), None if ok else {"m": m, "n": n})
    for f, a in itertools.product(SUBSTITUTION_POLYS, SUBSTITUTION_POINTS):
        ok = delta_substitution_check(f, a, window)
        rep.check(f"substitution f={f} a={a}", ok, hi - lo + 1, None if ok else {"f": str(f), "a": str(a)})
    return rep


def witness_gate(rep: Report, W: ModuleSpec, witness, window: ExponentWindow, vecs) -> bool:
    """Record whether ``witness`` holds on ``vecs``; later checks need it."""
    mem = check_membership(W, witness, window, vecs, max_counterexamples=1)
    return rep.check("witness holds", mem["pass"], mem["checked"],
                     mem["counterexamples"][0] if mem["counterexamples"] else None)


def psi_instance_checks(alpha, p0: LaurentPoly, window: ExponentWindow, c=Fraction(7)):
    """The five projection properties on one series; yields (name, ok)."""
    tilde, check = decompose_series(alpha, p0)
    q = p0
    yield "identity on restricted part", psi_series(tilde, q).first_mismatch(tilde, window) is None
    yield "zero on annihilated part", psi_series(check, q).vanishes_on(window)
    yield "multiplier identity", tilde.times_poly(q).first_mismatch(alpha.times_poly(q), window) is None
    other = psi_series(alpha, q * LaurentPoly.from_roots([c]))
    yield "independent of annihilator", other.first_mismatch(tilde, window) is None
    yield "idempotent", psi_series(tilde, q).first_mismatch(psi_series(psi_series(alpha, q), q), window) is None


def suite_psi(W: ModuleSpec | None = None, witness=None, window: ExponentWindow | None = None,
              seed: int = 0, count: int = 6) -> Report:
    W = W or mixed_module()
    witness = witness or W.witness()
    window = window or ExponentWindow.from_modes((-3, 3), [(-2, 2)] * W.rank)
    p0 = witness.p0 if witness.p0 is not None else LaurentPoly.constant(1)
    rep = Report("psi-properties", seed, window.to_json(), witness.category, witness.to_json())
    rng = random.Random(seed)
    vecs = sample_vectors(W, rng, count)
    rep.samples = [W.vec_str(v) for v in vecs]
    if not witness_gate(rep, W, witness, window, vecs):
        return rep
    tallies: dict[str, list[int]] = {}
    for w in vecs:
        for a in range(W.g.dimension):
            for name, ok in psi_instance_checks(action_series(W, a, w), p0, window):
                t = tallies.setdefault(name, [0, 0])
                t[0] += 1
                t[1] += ok
    for name, (n, good) in tallies.items():
        rep.check(name, good == n, n, None if good == n else {"failed": n - good})
    return rep


def reference_split(W: ModuleSpec):
    """Per-slot reference actions: restricted tensor slots vs evaluation slots."""
    parts = W.parts if isinstance(W, TensorModule) else [W]

    def act(side, key, label):
        labels = label if isinstance(W, TensorModule) else (label,)
        out = Vec()
        for j, P in enumerate(parts):
            if P.restricted != (side == "R"):
                continue
            for lab, cv in P.act(key, labels[j]).items():
                nl = labels[:j] + (lab,) + labels[j + 1:]
                out = out + cv * Vec.basis(nl if isinstance(W, TensorModule) else nl[0])
        return out

    return (lambda key, lab: act("R", key, lab)), (lambda key, lab: act("E", key, lab))


def suite_split(W: ModuleSpec | None = None, witness=None, window: ExponentWindow | None = None,
                seed: int = 0, max_degree: int = 2,
                commute_window: ExponentWindow | None = None) -> Report:
    W = W or mixed_module()
    witness = witness or W.witness()
    window = window or ExponentWindow.from_modes((-3, 3), [(-3, 3)] * W.rank)
    rep = Report("thm4.8-split", seed, window.to_json(), witness.category, witness.to_json())
    vecs = low_vectors(W, max_degree)
    rep.samples = [W.vec_str(v) for v in vecs]
    if not witness_gate(rep, W, witness, window, vecs):
        return rep
    d = decompose_pi(W, witness)
    ref_R, ref_E = reference_split(W)
    keys = g_keys(W, list(window.modes()))
    counts = {"additivity": [0, None], "restricted part": [0, None], "evaluation part": [0, None]}
    for w in vecs:
        (lab,) = w
        for k in keys:
            r, e, full = d.pi_R(k, w), d.pi_E(k, w), W.apply(k, w)
            for name, lhs, rhs in (("additivity", r + e, full), ("restricted part", r, ref_R(k, lab)),
                                   ("evaluation part", e, ref_E(k, lab))):
                counts[name][0] += 1
                if lhs != rhs and counts[name][1] is None:
                    counts[name][1] = {"key": key_str(W.g, k), "vector": W.vec_str(w),
                                       "lhs": W.vec_str(lhs), "rhs": W.vec_str(rhs)}
    for name, (n, bad) in counts.items():
        rep.check(name, bad is None, n, bad)
    # commutation: strict inner applications, so the window must keep results in range
    if commute_window is None:
        commute_window = strict_window(W, window, vecs)
    try:
        bad = verify_commuting_actions(d, commute_window, vecs)
        rep.check("split actions commute", bad is None, len(vecs), bad)
    except NotWithinValidWindow as exc:
        rep.check("split actions commute", False, 0, {"error": str(exc)})
    for side, mod in (("restricted", d.R), ("evaluation", d.E)):
        mem = check_membership(mod, mod.witness(), window, vecs, max_counterexamples=1)
        rep.check(f"{side} part in category", mem["pass"], mem["checked"],
                  mem["counterexamples"][0] if mem["counterexamples"] else None)
    return rep


def strict_window(W: ModuleSpec, window: ExponentWindow, vecs) -> ExponentWindow:
    """Shrink the x0 modes of ``window`` from below until every key fits on every vector."""
    modes = sorted({n0 for n0, _ in window.modes()})
    zero = (0,) * W.rank
    fitting = [n0 for n0 in modes if all(W.fits(G(0, n0, zero), lab) for v in vecs for lab in v)]
    lo = fitting[0] if fitting else modes[-1]
    return ExponentWindow((window.x0[0], -lo - 1), window.x)


def suite_vandermonde(W: EvalModule | None = None, seed: int = 0, n0_range=(-2, 2)) -> Report:
    rng = random.Random(seed)
    if W is None:
        pts = random_points(rng, 3, 2)
        W = EvalModule([(FiniteIrrep(1), p) for p in pts])
    rep = Report("vandermonde", seed, {"n0": list(n0_range)}, "E_tau")
    r = W.rank
    last = [p.z[-1] for p in W.points]
    N = len(last)
    rep.samples = [W.vec_str(Vec.basis(b)) for b in W.basis()]
    n_rec = n_res = 0
    bad_rec = bad_res = None
    for lab in W.basis():
        w = Vec.basis(lab)
        for a in range(W.g.dimension):
            for n0 in range(n0_range[0], n0_range[1] + 1):
                head = (0,) * (r - 1)
                samples = {m: W.apply(G(a, n0, head + (m,)), w) for m in range(N)}
                parts = vandermonde_separate(samples, last)
                for m in range(N):
                    n_res += 1
                    if vandermonde_recombine(parts, last, m) != samples[m] and bad_res is None:
                        bad_res = {"vector": W.vec_str(w), "n0": n0, "m": m}
                for j, (U, p) in enumerate(W.factors):
                    single = EvalModule([(U, p)])
                    img = single.apply(G(a, n0, head + (0,)), Vec.basis((lab[j],)))
                    expect = Vec({lab[:j] + (k[0],) + lab[j + 1:]: c for k, c in img.items()})
                    n_rec += 1
                    if parts[j] != expect and bad_rec is None:
                        bad_rec = {"vector": W.vec_str(w), "slot": j, "n0": n0,
                                   "lhs": W.vec_str(parts[j]), "rhs": W.vec_str(expect)}
    rep.check("slot actions recovered", bad_rec is None, n_rec, bad_rec)
    rep.check("resubstitution residual zero", bad_res is None, n_res, bad_res)
    return rep


def suite_integrability(W: ModuleSpec | None = None, witness=None, seed: int = 0,
                        n0_range=(0, 2), n_range=(-1, 1), max_degree: int = 2, max_m: int = 3) -> Report:
    W = W or mixed_module()
    witness = witness or W.witness()
    rep = Report("integrability", seed, {"n0": list(n0_range), "n": list(n_range)},
                 witness.category, witness.to_json())
    # root-vector nilpotency on V(m): e^(m+1) = 0 and e^m v_m != 0 (same for f on v_0)
    total, bad = 0, None
    for m in range(max_m + 1):
        E = EvalModule([(FiniteIrrep(m), (2,) * (W.rank + 1))])
        for a, lab in (("e", f"v{m}"), ("f", "v0")):
            total += 1
            k = nilpotency_check(E, a, 1, (1,) * W.rank, Vec.basis((lab,)), m + 5)
            if k != m + 1 and bad is None:
                bad = {"module": f"V({m})", "root": a, "k": k, "expected": m + 1}
    rep.check("nilpotency order m+1 on V(m)", bad is None, total, bad)
    vecs = low_vectors(W, max_degree)
    rep.samples = [W.vec_str(v) for v in vecs]
    gate_window = ExponentWindow.from_modes((n0_range[0] - 1, n0_range[1] + 1), [n_range] * W.rank)
    if not witness_gate(rep, W, witness, gate_window, vecs):
        return rep
    d = decompose_pi(W, witness)
    results, bad = [], None
    for a in W.g.root_vectors:
        for n0 in range(n0_range[0], n0_range[1] + 1):
            for n in itertools.product(range(n_range[0], n_range[1] + 1), repeat=W.rank):
                for w in vecs:
                    try:
                        res = integrability_transport_check(d, a, n0, n, w)
                        results.append(res)
                    except AssertionError as exc:
                        if bad is None:
                            bad = {"key": key_str(W.g, G(a, n0, tuple(n))), "vector": W.vec_str(w),
                                   "error": str(exc)}
    rep.check("transport bounds", bad is None, len(results) + (bad is not None), bad)
    return rep
