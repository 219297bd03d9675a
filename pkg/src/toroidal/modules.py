"""Concrete modules for the toroidal algebra.

* :class:`EvalModule` -- tensor products of finite-dimensional g-modules
  evaluated at points ``z = (z0, ..., zr)``; the whole center acts as zero.
* :class:`InducedModule` -- the generalized Verma module over the affine
  algebra (rank 0) induced from a g-module, truncated at a PBW degree.
* :class:`RestrictedEvalModule` -- affine modules spread over points
  ``z = (z1, ..., zr)`` (no ``z0``), with ``K0(n)`` acting through the levels.
* :class:`TensorModule` -- tensor product of modules of equal rank.

Vectors are :class:`~toroidal.linear.Vec` over hashable basis labels.
Truncated modules return the exact projection of a result onto degrees
``<= depth``; passing ``strict=True`` to :meth:`ModuleSpec.apply` raises
:class:`NotWithinValidWindow` instead of projecting.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (IndexOutOfRange, MissingRestrictionBound, MissingWeightData,
                     NotWithinValidWindow, RankMismatch, ZeroPoint)
from .exact import LaurentPoly, reduced_nonzero_part, scalar
from .lie import G, K0, GVec, Ki, SimpleLieData, Toroidal, ToroidalElement, key_str, sl2
from .linear import Vec
from .witness import CategoryWitness, combine_witnesses


# --- finite-dimensional g-modules -------------------------------------------

class GModule:
    """A finite-dimensional g-module: ``action[a][label]`` is the image of a basis label."""

    def __init__(self, g: SimpleLieData, labels: Sequence, action: dict[int, dict]):
        self.g = g
        self.labels = tuple(labels)
        self.action = {a: {lab: Vec(img) for lab, img in rows.items()} for a, rows in action.items()}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def act(self, a: int, label) -> Vec:
        return self.action.get(a, {}).get(label, Vec())

    def act_vec(self, x: GVec, v: Vec) -> Vec:
        out = Vec()
        for a, ca in x.items():
            for lab, cv in v.items():
                out = out + (ca * cv) * self.act(a, lab)
        return out

    def weight(self, label) -> tuple[Fraction, ...] | None:
        w = []
        for c in self.g.cartan:
            img = self.act(c, label)
            if img.is_zero():
                w.append(Fraction(0))
            elif set(img) == {label}:
                w.append(img[label])
            else:
                return None
        return tuple(w)

    def matrix(self, a: int) -> list[list[Fraction]]:
        """Matrix of basis element ``a`` (column j = image of label j)."""
        return [[self.act(a, lj).get(li) for lj in self.labels] for li in self.labels]

    def check_relations(self) -> bool:
        """x(y v) - y(x v) == [x,y] v on every basis triple."""
        for a, b in itertools.product(range(self.g.dimension), repeat=2):
            xa, xb = GVec.basis(a), GVec.basis(b)
            xab = self.g.bracket(xa, xb)
            for lab in self.labels:
                v = Vec.basis(lab)
                lhs = self.act_vec(xa, self.act_vec(xb, v)) - self.act_vec(xb, self.act_vec(xa, v))
                if lhs != self.act_vec(xab, v):
                    return False
        return True


class FiniteIrrep(GModule):
    """The (m+1)-dimensional irreducible sl2-module V(m) on ``v0, ..., vm``.

    h v_k = (m - 2k) v_k,  f v_k = v_{k+1},  e v_k = k (m - k + 1) v_{k-1}.
    """

    def __init__(self, m: int, g: SimpleLieData | None = None):
        if m < 0:
            raise ValueError("highest weight must be non-negative")
        g = g or sl2()
        e, f, h = g.index("e"), g.index("f"), g.index("h")
        labels = [f"v{k}" for k in range(m + 1)]
        action = {e: {}, f: {}, h: {}}
        for k, lab in enumerate(labels):
            action[h][lab] = {lab: m - 2 * k}
            if k < m:
                action[f][lab] = {labels[k + 1]: 1}
            if k > 0:
                action[e][lab] = {labels[k - 1]: k * (m - k + 1)}
        super().__init__(g, labels, action)
        self.m = m

    def __repr__(self) -> str:
        return f"V({self.m})"


def defining_module(g: SimpleLieData) -> GModule:
    """The matrix realisation stored with ``g`` (sl_n: the natural module)."""
    if g.matrices is None:
        raise ValueError(f"{g.name} carries no matrix realisation")
    n = len(g.matrices[0])
    labels = [f"u{i}" for i in range(n)]
    action = {}
    for a, m in enumerate(g.matrices):
        action[a] = {labels[j]: {labels[i]: m[i][j] for i in range(n) if m[i][j]} for j in range(n)}
    return GModule(g, labels, action)


# --- evaluation points ------------------------------------------------------

@dataclass(frozen=True)
class EvalPoint:
    """``(z0, ..., zr)``, all nonzero."""

    z: tuple[Fraction, ...]

    def __init__(self, z):
        z = tuple(scalar(v) for v in z)
        if not z:
            raise ValueError("an evaluation point needs at least one coordinate")
        if any(v == 0 for v in z):
            raise ZeroPoint(f"evaluation point {tuple(map(str, z))} has a zero coordinate")
        object.__setattr__(self, "z", z)

    def __len__(self):
        return len(self.z)

    def power(self, exps: Sequence[int]) -> Fraction:
        out = Fraction(1)
        for zi, e in zip(self.z, exps):
            out *= zi ** e
        return out


class RestrictedEvalPoint(EvalPoint):
    """``(z1, ..., zr)`` -- no ``z0`` coordinate."""


# --- module base ------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """Eigenvalues of the extended Cartan on one basis vector."""

    h: tuple[Fraction, ...]
    k0: Callable[[tuple[int, ...]], Fraction]
    k: tuple[Fraction, ...]


def _zero_k0(n):
    return Fraction(0)


class ModuleSpec:
    """A module given by its action on basis labels.

    Subclasses implement :meth:`_act` on single labels; :meth:`apply` is the
    linear extension with caching and window handling.
    """

    g: SimpleLieData
    rank: int
    valid_window: int | None = None
    restricted = False

    def __init__(self, g: SimpleLieData, rank: int):
        self.g = g
        self.rank = rank
        self.algebra = Toroidal(g, rank)
        self._acts: dict = {}

    # subclasses ---------------------------------------------------------
    def _act(self, key, label) -> Vec:
        raise NotImplementedError

    def basis(self) -> list:
        raise NotImplementedError

    def degree(self, label) -> int:
        return 0

    def fits(self, key, label) -> bool:
        """Whether ``key`` applied to ``label`` stays inside the stored degrees."""
        if self.valid_window is None:
            return True
        return self.degree(label) + raise_of(key) <= self.valid_window

    def restriction_bound(self, a: int, n: tuple[int, ...], label) -> int | None:
        """N with G(a, n0, n) label == 0 for all n0 > N, or None if unrestricted."""
        return None

    def series_floor(self, q: LaurentPoly, a: int, label) -> int | None:
        """F with (q(x0) a(x0, x) label) vanishing at every mode n0 > F (q(0) != 0)."""
        return None

    def weight_of(self, label) -> Weight | None:
        return None

    def witness(self) -> CategoryWitness | None:
        return None

    def label_str(self, label) -> str:
        return str(label)

    def describe(self) -> dict:
        return {"type": type(self).__name__, "rank": self.rank}

    # shared -------------------------------------------------------------
    def _key(self, key):
        return self.algebra._check_key(key)

    def act(self, key, label) -> Vec:
        ck = (key, label)
        hit = self._acts.get(ck)
        if hit is None:
            hit = self._act(self._key(key), label)
            if self.valid_window is not None:
                hit = Vec({lab: c for lab, c in hit.items() if self.degree(lab) <= self.valid_window})
            self._acts[ck] = hit
        return hit

    def apply(self, key, vec: Vec, strict: bool = False) -> Vec:
        """Image of ``vec`` under a generator key or a :class:`ToroidalElement`."""
        if isinstance(key, ToroidalElement):
            out = Vec()
            for k, c in key.items():
                out = out + c * self.apply(k, vec, strict)
            return out
        out = Vec()
        for lab, c in vec.items():
            if strict and not self.fits(key, lab):
                raise NotWithinValidWindow(
                    f"{key_str(self.g, key)} on {self.label_str(lab)} leaves the stored degrees")
            out = out + c * self.act(key, lab)
        return out

    def vector(self, label) -> Vec:
        return Vec.basis(label)

    def vec_str(self, v: Vec) -> dict[str, str]:
        return {self.label_str(lab): str(c) for lab, c in sorted(v.items(), key=lambda kv: self.label_str(kv[0]))}

    def label_from_str(self, text: str):
        for lab in self.basis():
            if self.label_str(lab) == text:
                return lab
        raise IndexOutOfRange(f"no basis vector named {text!r}")

    def vector_restriction_bound(self, a: int, n, v: Vec) -> int | None:
        bounds = [self.restriction_bound(a, tuple(n), lab) for lab in v]
        if any(b is None for b in bounds):
            return None
        return max(bounds, default=-1)

    def vector_series_floor(self, q: LaurentPoly, a: int, v: Vec) -> int | None:
        floors = [self.series_floor(q, a, lab) for lab in v]
        if any(f is None for f in floors):
            return None
        return max(floors, default=-1)


def raise_of(key) -> int:
    """Degree change produced by a key (``-n0`` for G keys)."""
    return -key.n0 if isinstance(key, G) else 0


def _replace(t: tuple, i: int, item) -> tuple:
    return t[:i] + (item,) + t[i + 1:]


# --- evaluation modules -----------------------------------------------------

class EvalModule(ModuleSpec):
    """``U_1(z_1) (x) ... (x) U_s(z_s)``:  a(n0, n) acts on slot j with weight z_j^(n0, n)."""

    def __init__(self, factors: Sequence[tuple[GModule, EvalPoint]]):
        factors = [(U, p if isinstance(p, EvalPoint) else EvalPoint(p)) for U, p in factors]
        if not factors:
            raise ValueError("an evaluation module needs at least one factor")
        lengths = {len(p) for _, p in factors}
        if len(lengths) != 1:
            raise RankMismatch("evaluation points have different lengths")
        if len({U.g.name for U, _ in factors}) != 1:
            raise ValueError("factors are modules for different algebras")
        super().__init__(factors[0][0].g, lengths.pop() - 1)
        self.factors = factors
        self._basis = list(itertools.product(*(U.labels for U, _ in factors)))

    @property
    def points(self) -> list[EvalPoint]:
        return [p for _, p in self.factors]

    def basis(self):
        return list(self._basis)

    def _act(self, key, label) -> Vec:
        if not isinstance(key, G):
            return Vec()
        exps = (key.n0,) + key.n
        out: dict = {}
        for j, (U, p) in enumerate(self.factors):
            zc = p.power(exps)
            for lab, c in U.act(key.a, label[j]).items():
                nl = _replace(label, j, lab)
                out[nl] = out.get(nl, 0) + zc * c
        return Vec(out)

    def weight_of(self, label) -> Weight | None:
        hs = [U.weight(lab) for (U, _), lab in zip(self.factors, label)]
        if any(h is None for h in hs):
            return None
        h = tuple(sum(col, Fraction(0)) for col in zip(*hs)) if hs[0] else ()
        return Weight(h, _zero_k0, (Fraction(0),) * self.rank)

    def series_floor(self, q, a, label):
        # q kills every slot's x0-series iff q(z0j) = 0 for all j; then q*alpha = 0.
        if all(q(p.z[0]) == 0 for p in self.points):
            return -1
        return None

    def annihilators(self) -> list[LaurentPoly]:
        return eval_annihilator(self.points)

    def witness(self) -> CategoryWitness:
        polys = [reduced_nonzero_part(p) for p in self.annihilators()]
        return CategoryWitness("E_tau_prime", polys[0], tuple(polys[1:]))

    def label_str(self, label) -> str:
        return "⊗".join(map(str, label))

    def describe(self) -> dict:
        return {
            "type": "eval",
            "rank": self.rank,
            "factors": [{"module": repr(U) if isinstance(U, FiniteIrrep) else f"dim {U.dim}",
                         "z": [str(v) for v in p.z]} for U, p in self.factors],
        }


def eval_annihilator(points: Sequence[EvalPoint]) -> list[LaurentPoly]:
    """p_i(x) = prod_j (x - z_ij) for i = 0..r."""
    points = [p if isinstance(p, EvalPoint) else EvalPoint(p) for p in points]
    if not points:
        raise ValueError("need at least one point")
    return [LaurentPoly.from_roots(p.z[i] for p in points) for i in range(len(points[0]))]


def eval_action(U: Sequence[GModule], Z: Sequence, key, v: Vec) -> Vec:
    if len(U) != len(Z):
        raise IndexOutOfRange("one evaluation point per factor")
    return EvalModule(list(zip(U, Z))).apply(key, v)


# --- induced (generalized Verma) modules ------------------------------------

class InducedModule(ModuleSpec):
    """U(g^) (x)_{U(g[t0] + C K0)} U, truncated at PBW degree ``depth``.

    Basis labels are ``(letters, u)`` with ``letters`` an ascending tuple of
    ``(m, i)`` standing for ``b_i(-m)``, m >= 1; the monomial is read left to
    right.  K0 acts as ``level``.
    """

    restricted = True

    def __init__(self, U: GModule, level, depth: int):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        super().__init__(U.g, 0)
        self.U = U
        self.level = scalar(level)
        self.depth = depth
        self.valid_window = depth
        self._memo: dict = {}
        self._basis = sorted(
            ((mono, u) for mono in _monomials(U.g.dimension, depth) for u in U.labels),
            key=lambda lab: (_deg(lab[0]), lab[0], U.labels.index(lab[1])))
        self._adj = U.g.adjoint_weights()

    def basis(self):
        return list(self._basis)

    def graded_dims(self) -> list[int]:
        dims = [0] * (self.depth + 1)
        for mono, _ in self._basis:
            dims[_deg(mono)] += 1
        return dims

    @property
    def vacuum(self):
        return ((), self.U.labels[0])

    def degree(self, label) -> int:
        return _deg(label[0])

    def _act(self, key, label) -> Vec:
        if isinstance(key, K0):
            return Vec({label: self.level})
        if isinstance(key, G):
            return self._straighten(key.a, key.n0, label[0], label[1])
        return Vec()

    def _straighten(self, i: int, n: int, letters: tuple, u) -> Vec:
        """b_i(n) applied to the normal-ordered monomial ``letters`` (x) u, exactly."""
        mk = (i, n, letters, u)
        hit = self._memo.get(mk)
        if hit is not None:
            return hit
        if n < 0 and (not letters or (-n, i) <= letters[0]):
            res = Vec({(((-n, i),) + letters, u): 1})
        elif not letters:
            res = Vec() if n > 0 else Vec({((), lab): c for lab, c in self.U.act(i, u).items()})
        else:
            (m, j), rest = letters[0], letters[1:]
            # b_i(n) b_j(-m) R = b_j(-m) b_i(n) R + [b_i(n), b_j(-m)] R
            res = Vec()
            for (mono, uu), c in self._straighten(i, n, rest, u).items():
                res = res + c * self._straighten(j, -m, mono, uu)
            for k, c in self.g.basis_bracket(i, j).items():
                res = res + c * self._straighten(k, n - m, rest, u)
            if n == m and self.g.form[i][j]:
                res = res + (n * self.g.form[i][j] * self.level) * Vec({(rest, u): 1})
        self._memo[mk] = res
        return res

    def restriction_bound(self, a, n, label):
        return self.degree(label)

    def series_floor(self, q, a, label):
        return self.degree(label)

    def weight_of(self, label) -> Weight | None:
        wu = self.U.weight(label[1])
        if wu is None or self._adj is None:
            return None
        h = list(wu)
        for _, i in label[0]:
            h = [x + y for x, y in zip(h, self._adj[i])]
        level = self.level
        return Weight(tuple(h), lambda n: level, ())

    def label_str(self, label) -> str:
        mono, u = label
        head = "".join(f"{self.g.labels[i]}({-m})" for m, i in mono)
        tail = "vac" if self.U.dim == 1 else str(u)
        return head + tail

    def describe(self) -> dict:
        return {"type": "induced", "rank": 0, "level": str(self.level), "depth": self.depth,
                "graded_dims": self.graded_dims()}


def _deg(mono) -> int:
    return sum(m for m, _ in mono)


def _monomials(dim: int, depth: int):
    letters = [(m, i) for m in range(1, depth + 1) for i in range(dim)]

    def rec(start: int, budget: int, acc: tuple):
        yield acc
        for idx in range(start, len(letters)):
            m = letters[idx][0]
            if m <= budget:
                yield from rec(idx, budget - m, acc + (letters[idx],))

    yield from rec(0, depth, ())


def induced_module_build(U: GModule, level, depth: int) -> InducedModule:
    return InducedModule(U, level, depth)


# --- restricted evaluation modules ------------------------------------------

class RestrictedEvalModule(ModuleSpec):
    """``V_1(z_1) (x) ... (x) V_M(z_M)`` for affine modules V_i and points z_i in (Q*)^r."""

    restricted = True

    def __init__(self, factors: Sequence[tuple[ModuleSpec, RestrictedEvalPoint]]):
        factors = [(V, p if isinstance(p, RestrictedEvalPoint) else RestrictedEvalPoint(p)) for V, p in factors]
        if not factors:
            raise ValueError("need at least one factor")
        lengths = {len(p) for _, p in factors}
        if len(lengths) != 1:
            raise RankMismatch("restricted evaluation points have different lengths")
        for V, _ in factors:
            if V.rank != 0:
                raise RankMismatch("factors must be affine (rank 0) modules")
            if not V.restricted:
                raise MissingRestrictionBound(f"{type(V).__name__} carries no restriction bound")
        super().__init__(factors[0][0].g, lengths.pop())
        self.factors = factors
        self._basis = list(itertools.product(*(V.basis() for V, _ in factors)))

    @property
    def points(self) -> list[RestrictedEvalPoint]:
        return [p for _, p in self.factors]

    def basis(self):
        return list(self._basis)

    def degree(self, label) -> int:
        return sum(V.degree(lab) for (V, _), lab in zip(self.factors, label))

    @staticmethod
    def _affine_key(key):
        return G(key.a, key.n0, ()) if isinstance(key, G) else K0(())

    def fits(self, key, label) -> bool:
        if isinstance(key, Ki):
            return True
        k = self._affine_key(key)
        return all(V.fits(k, lab) for (V, _), lab in zip(self.factors, label))

    def _act(self, key, label) -> Vec:
        if isinstance(key, Ki):
            return Vec()
        k = self._affine_key(key)
        out: dict = {}
        for j, (V, p) in enumerate(self.factors):
            zc = p.power(key.n)
            for lab, c in V.act(k, label[j]).items():
                nl = _replace(label, j, lab)
                out[nl] = out.get(nl, 0) + zc * c
        return Vec(out)

    def restriction_bound(self, a, n, label):
        return max(V.restriction_bound(a, (), lab) for (V, _), lab in zip(self.factors, label))

    def series_floor(self, q, a, label):
        floors = [V.series_floor(q, a, lab) for (V, _), lab in zip(self.factors, label)]
        return None if any(f is None for f in floors) else max(floors)

    def weight_of(self, label) -> Weight | None:
        ws = [V.weight_of(lab) for (V, _), lab in zip(self.factors, label)]
        if any(w is None for w in ws):
            return None
        h = tuple(sum(col, Fraction(0)) for col in zip(*(w.h for w in ws)))
        pts = self.points

        def k0(n):
            return sum((p.power(n) * w.k0(()) for p, w in zip(pts, ws)), Fraction(0))

        return Weight(h, k0, (Fraction(0),) * self.rank)

    def annihilators(self) -> list[LaurentPoly]:
        return [LaurentPoly.from_roots(sorted({p.z[i] for p in self.points})) for i in range(self.rank)]

    def witness(self) -> CategoryWitness:
        return CategoryWitness("R_tilde", None, tuple(self.annihilators()))

    def label_str(self, label) -> str:
        return "⊗".join(V.label_str(lab) for (V, _), lab in zip(self.factors, label))

    def describe(self) -> dict:
        return {"type": "restricted_eval", "rank": self.rank,
                "factors": [{"module": V.describe(), "z": [str(v) for v in p.z]} for V, p in self.factors]}


# --- tensor products --------------------------------------------------------

class TensorModule(ModuleSpec):
    """Tensor product of modules of the same rank; every key acts as a derivation."""

    def __init__(self, parts: Sequence[ModuleSpec]):
        parts = list(parts)
        if not parts:
            raise ValueError("empty tensor product")
        if len({P.rank for P in parts}) != 1:
            raise RankMismatch("tensor factors have different ranks")
        if len({P.g.name for P in parts}) != 1:
            raise ValueError("tensor factors are modules for different algebras")
        super().__init__(parts[0].g, parts[0].rank)
        self.parts = parts
        self.restricted = all(P.restricted for P in parts)
        self._basis = list(itertools.product(*(P.basis() for P in parts)))

    def basis(self):
        return list(self._basis)

    def degree(self, label) -> int:
        return sum(P.degree(lab) for P, lab in zip(self.parts, label))

    def fits(self, key, label) -> bool:
        return all(P.fits(key, lab) for P, lab in zip(self.parts, label))

    def _act(self, key, label) -> Vec:
        out: dict = {}
        for j, P in enumerate(self.parts):
            for lab, c in P.act(key, label[j]).items():
                nl = _replace(label, j, lab)
                out[nl] = out.get(nl, 0) + c
        return Vec(out)

    def restriction_bound(self, a, n, label):
        bounds = [P.restriction_bound(a, n, lab) for P, lab in zip(self.parts, label)]
        return None if any(b is None for b in bounds) else max(bounds)

    def series_floor(self, q, a, label):
        floors = [P.series_floor(q, a, lab) for P, lab in zip(self.parts, label)]
        return None if any(f is None for f in floors) else max(floors)

    def weight_of(self, label) -> Weight | None:
        ws = [P.weight_of(lab) for P, lab in zip(self.parts, label)]
        if any(w is None for w in ws):
            return None
        h = tuple(sum(col, Fraction(0)) for col in zip(*(w.h for w in ws)))
        k = tuple(sum(col, Fraction(0)) for col in zip(*(w.k for w in ws)))

        def k0(n):
            return sum((w.k0(n) for w in ws), Fraction(0))

        return Weight(h, k0, k)

    def witness(self) -> CategoryWitness | None:
        ws = [P.witness() for P in self.parts]
        if any(w is None for w in ws):
            return None
        return combine_witnesses(ws)

    def label_str(self, label) -> str:
        return "⊗".join(P.label_str(lab) for P, lab in zip(self.parts, label))

    def describe(self) -> dict:
        return {"type": "tensor", "rank": self.rank, "parts": [P.describe() for P in self.parts]}


# --- checks -----------------------------------------------------------------

def nilpotency_check(W: ModuleSpec, a, n0: int, n: Sequence[int], w: Vec, max_k: int) -> int | None:
    """Least k <= max_k with x_alpha(n0, n)^k w = 0, or None when none is found."""
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    a = W.g.index(a)
    if a not in W.g.root_vectors:
        raise IndexOutOfRange(f"{W.g.labels[a]} is not a designated root vector")
    key = W.algebra.key(a, n0, n)
    v = w
    if v.is_zero():
        return 0
    for k in range(1, max_k + 1):
        v = W.apply(key, v, strict=True)
        if v.is_zero():
            return k
    return None


def _mode_box(r: int, lo: int, hi: int):
    return itertools.product(range(lo, hi + 1), repeat=r)


def weight_space_check(W: ModuleSpec, k0_range: tuple[int, int] = (-2, 2)) -> bool:
    """Every extended-Cartan generator acts diagonally with the declared eigenvalues."""
    zero = (0,) * W.rank
    for lab in W.basis():
        wt = W.weight_of(lab)
        if wt is None:
            raise MissingWeightData(f"no weight declared for {W.label_str(lab)}")
        v = Vec.basis(lab)
        for c, hv in zip(W.g.cartan, wt.h):
            if W.apply(G(c, 0, zero), v) != hv * v:
                return False
        for n in _mode_box(W.rank, *k0_range):
            if W.apply(K0(tuple(n)), v) != wt.k0(tuple(n)) * v:
                return False
        for i, kv in enumerate(wt.k, start=1):
            if W.apply(Ki(i), v) != kv * v:
                return False
    return True


def representation_check(W: ModuleSpec, pairs, vectors) -> list[dict]:
    """Counterexamples to u(v w) - v(u w) == [u, v] w over the given key pairs and vectors.

    The inner application is strict, so a pair that would leave a truncated
    module's stored degrees raises :class:`NotWithinValidWindow`.
    """
    T = W.algebra
    bad = []
    for u, v in pairs:
        uu = u if isinstance(u, ToroidalElement) else ToroidalElement.basis(u)
        vv = v if isinstance(v, ToroidalElement) else ToroidalElement.basis(v)
        br = T.bracket(uu, vv)
        for w in vectors:
            lhs = W.apply(uu, W.apply(vv, w, strict=True)) - W.apply(vv, W.apply(uu, w, strict=True))
            rhs = W.apply(br, w)
            if lhs != rhs:
                bad.append({"u": uu, "v": vv, "w": w, "lhs": lhs, "rhs": rhs})
    return bad


def key_fits_vector(W: ModuleSpec, key, w: Vec) -> bool:
    return all(W.fits(key, lab) for lab in w)
