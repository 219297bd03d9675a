"""Simple Lie algebras by structure constants and the toroidal algebra built on them.

A toroidal element is a finite combination of the generators

* ``G(a, n0, n)`` -- basis vector ``a`` of g tensored with ``t0^n0 t^n``,
* ``K0(n)``       -- the central ``K0 (x) t^n``,
* ``Ki(i)``       -- the central ``K_i``, ``1 <= i <= r``,

and the bracket of two ``G`` generators is

    [a(n0,n), b(m0,m)] = [a,b](n0+m0, n+m) + n0 <a,b> d(n0+m0) K0(n+m)
                         + <a,b> d(n0+m0) d(n+m) sum_i n_i K_i .
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import BasisSearchFailed, IndexOutOfRange, InvalidLieData, RankMismatch
from .exact import matrix_rank, scalar, solve_linear_system
from .linear import SparseVector


class GVec(SparseVector):
    """An element of the finite-dimensional algebra g, keyed by basis index."""

    __slots__ = ()


@dataclass(frozen=True, eq=False)
class SimpleLieData:
    name: str
    labels: tuple[str, ...]
    structure: Mapping[tuple[int, int], GVec]  # (i, j) -> [b_i, b_j], i < j
    form: tuple[tuple[Fraction, ...], ...]
    root_vectors: tuple[int, ...]
    cartan: tuple[int, ...]
    nilpotent: tuple[GVec, ...] | None = None
    matrices: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.dimension:
                raise IndexOutOfRange(f"basis index {label} out of range for {self.name}")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexOutOfRange(f"{self.name} has no basis element {label!r}") from None

    def basis_bracket(self, i: int, j: int) -> GVec:
        if i == j:
            return GVec()
        if i < j:
            return self.structure.get((i, j), GVec())
        return -self.structure.get((j, i), GVec())

    def bracket(self, u: GVec, v: GVec) -> GVec:
        out = GVec()
        for i, a in u.items():
            for j, b in v.items():
                if i != j:
                    out = out + (a * b) * self.basis_bracket(i, j)
        return out

    def form_value(self, u: GVec, v: GVec) -> Fraction:
        return sum((a * b * self.form[i][j] for i, a in u.items() for j, b in v.items()), Fraction(0))

    def vec(self, label) -> GVec:
        return GVec.basis(self.index(label))

    def adjoint_weights(self) -> dict[int, tuple[Fraction, ...]] | None:
        """Eigenvalues of ad(h), h in the Cartan list, on each basis vector (None if not diagonal)."""
        weights = {}
        for b in range(self.dimension):
            w = []
            for c in self.cartan:
                img = self.basis_bracket(c, b)
                if img.is_zero():
                    w.append(Fraction(0))
                elif set(img) == {b}:
                    w.append(img[b])
                else:
                    return None
            weights[b] = tuple(w)
        return weights

    def ad_nilpotent(self, u: GVec) -> bool:
        v = [GVec.basis(b) for b in range(self.dimension)]
        for _ in range(self.dimension):
            v = [self.bracket(u, x) for x in v]
        return all(x.is_zero() for x in v)

    # --- validation -------------------------------------------------------
    def validate(self) -> SimpleLieData:
        n = self.dimension
        if len(self.form) != n or any(len(row) != n for row in self.form):
            raise InvalidLieData("form must be a dimension x dimension matrix")
        for (i, j) in self.structure:
            if not (0 <= i < j < n):
                raise InvalidLieData(f"bracket entry ({i}, {j}) must satisfy 0 <= i < j < {n}")
        for i, j, k in itertools.combinations_with_replacement(range(n), 3):
            ei, ej, ek = GVec.basis(i), GVec.basis(j), GVec.basis(k)
            jac = (self.bracket(ei, self.bracket(ej, ek)) + self.bracket(ej, self.bracket(ek, ei))
                   + self.bracket(ek, self.bracket(ei, ej)))
            if not jac.is_zero():
                raise InvalidLieData(f"Jacobi identity fails on basis triple {(i, j, k)}")
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    raise InvalidLieData(f"form not symmetric at ({i}, {j})")
        if matrix_rank(self.form) != n:
            raise InvalidLieData("form is degenerate")
        for i, j, k in itertools.product(range(n), repeat=3):
            ei, ej, ek = GVec.basis(i), GVec.basis(j), GVec.basis(k)
            if self.form_value(self.bracket(ei, ej), ek) != self.form_value(ei, self.bracket(ej, ek)):
                raise InvalidLieData(f"form not invariant on basis triple {(i, j, k)}")
        for a in self.root_vectors:
            self.index(a)
            if self.form[a][a] != 0:
                raise InvalidLieData(f"root vector {self.labels[a]} is not isotropic")
        for c in self.cartan:
            self.index(c)
        for c1, c2 in itertools.combinations(self.cartan, 2):
            if not self.basis_bracket(c1, c2).is_zero():
                raise InvalidLieData("Cartan elements do not commute")
        return self

    # --- construction -----------------------------------------------------
    @classmethod
    def from_matrices(cls, name, labels, matrices, root_vectors, cartan, nilpotent=None) -> SimpleLieData:
        """Structure constants from a faithful matrix realisation, form = trace form."""
        mats = [tuple(tuple(scalar(v) for v in row) for row in m) for m in matrices]
        flat = [[m[i][j] for m in mats] for i in range(len(mats[0])) for j in range(len(mats[0]))]
        if matrix_rank(flat) != len(mats):
            raise InvalidLieData("basis matrices are linearly dependent")
        # least-squares-free decomposition: pick rows that make the system square
        pivot_rows = _independent_rows(flat, len(mats))

        def decompose(m) -> GVec:
            target = [m[r // len(m)][r % len(m)] for r in pivot_rows]
            sq = [flat[r] for r in pivot_rows]
            coeffs = solve_linear_system(sq, target)
            return GVec(dict(enumerate(coeffs)))

        structure = {}
        for i, j in itertools.combinations(range(len(mats)), 2):
            c = _matsub(_matmul(mats[i], mats[j]), _matmul(mats[j], mats[i]))
            v = decompose(c)
            if v:
                structure[(i, j)] = v
        form = tuple(tuple(_trace(_matmul(a, b)) for b in mats) for a in mats)
        nil = None
        if nilpotent is not None:
            nil = tuple(GVec({labels.index(k): scalar(c) for k, c in combo.items()}) for combo in nilpotent)
        return cls(name, tuple(labels), structure, form, tuple(root_vectors), tuple(cartan),
                   nil, matrices=tuple(mats)).validate()

    @classmethod
    def from_json(cls, data) -> SimpleLieData:
        """Load ``{dimension, brackets: [[i,j,k,"c"],...], form, root_vectors, cartan}``."""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["dimension"])
            labels = tuple(data.get("labels") or [f"b{i}" for i in range(n)])
            acc: dict[tuple[int, int], dict[int, Fraction]] = {}
            for i, j, k, c in data["brackets"]:
                i, j, k, c = int(i), int(j), int(k), scalar(c)
                if i == j:
                    raise InvalidLieData(f"bracket entry [{i},{i},...] must vanish")
                sign = 1
                if i > j:
                    i, j, sign = j, i, -1
                slot = acc.setdefault((i, j), {})
                slot[k] = slot.get(k, 0) + sign * c
            structure = {ij: GVec(v) for ij, v in acc.items() if GVec(v)}
            form = tuple(tuple(scalar(v) for v in row) for row in data["form"])
            nil = data.get("nilpotent_basis")
            nil = tuple(GVec({int(k): scalar(v) for k, v in combo.items()}) for combo in nil) if nil else None
            obj = cls(data.get("name", "custom"), labels, structure, form,
                      tuple(int(a) for a in data.get("root_vectors", [])),
                      tuple(int(c) for c in data.get("cartan", [])), nil)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidLieData):
                raise
            raise InvalidLieData(f"malformed Lie algebra table: {exc}") from exc
        return obj.validate()

    def to_json(self) -> dict:
        brackets = [[i, j, k, str(c)] for (i, j), v in sorted(self.structure.items()) for k, c in sorted(v.items())]
        out = {
            "name": self.name,
            "dimension": self.dimension,
            "labels": list(self.labels),
            "brackets": brackets,
            "form": [[str(v) for v in row] for row in self.form],
            "root_vectors": list(self.root_vectors),
            "cartan": list(self.cartan),
        }
        if self.nilpotent is not None:
            out["nilpotent_basis"] = [{str(k): str(c) for k, c in sorted(v.items())} for v in self.nilpotent]
        return out


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)) for i in range(n))


def _matsub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def _independent_rows(rows, k):
    chosen: list[int] = []
    for idx in range(len(rows)):
        if matrix_rank([rows[i] for i in chosen + [idx]]) > len(chosen):
            chosen.append(idx)
            if len(chosen) == k:
                break
    return chosen


def _unit(n, i, j):
    return tuple(tuple(Fraction(1 if (r, c) == (i, j) else 0) for c in range(n)) for r in range(n))


def _diag(*entries):
    n = len(entries)
    return tuple(tuple(Fraction(entries[r] if r == c else 0) for c in range(n)) for r in range(n))


@lru_cache(maxsize=None)
def sl2() -> SimpleLieData:
    """sl2 with basis (e, f, h), trace form: <e,f> = 1, <h,h> = 2."""
    return SimpleLieData.from_matrices(
        "sl2", ["e", "f", "h"],
        [_unit(2, 0, 1), _unit(2, 1, 0), _diag(1, -1)],
        root_vectors=[0, 1], cartan=[2],
        nilpotent=[{"e": 1}, {"f": 1}, {"h": 1, "e": 1, "f": -1}],
    )


@lru_cache(maxsize=None)
def sl3() -> SimpleLieData:
    """sl3 with basis E12, E13, E23, E21, E31, E32, H1, H2 and the trace form."""
    labels = ["E12", "E13", "E23", "E21", "E31", "E32", "H1", "H2"]
    mats = [_unit(3, 0, 1), _unit(3, 0, 2), _unit(3, 1, 2),
            _unit(3, 1, 0), _unit(3, 2, 0), _unit(3, 2, 1),
            _diag(1, -1, 0), _diag(0, 1, -1)]
    nil = [{lab: 1} for lab in labels[:6]]
    # h + e - f blocks, each squares to zero
    nil.append({"H1": 1, "E12": 1, "E21": -1})
    nil.append({"H2": 1, "E23": 1, "E32": -1})
    return SimpleLieData.from_matrices("sl3", labels, mats, root_vectors=range(6), cartan=[6, 7], nilpotent=nil)


ALGEBRAS = {"sl2": sl2, "sl3": sl3}


def get_algebra(name_or_table) -> SimpleLieData:
    if isinstance(name_or_table, SimpleLieData):
        return name_or_table
    if isinstance(name_or_table, str) and name_or_table in ALGEBRAS:
        return ALGEBRAS[name_or_table]()
    if isinstance(name_or_table, (dict, str)):
        return SimpleLieData.from_json(name_or_table)
    raise InvalidLieData(f"unknown algebra {name_or_table!r}")


# --- toroidal generators --------------------------------------------------

@dataclass(frozen=True)
class G:
    a: int
    n0: int
    n: tuple[int, ...]


@dataclass(frozen=True)
class K0:
    n: tuple[int, ...]


@dataclass(frozen=True)
class Ki:
    i: int


GeneratorKey = G | K0 | Ki


def key_order(k) -> tuple:
    if isinstance(k, G):
        return (0, k.a, k.n0, k.n)
    if isinstance(k, K0):
        return (1, 0, 0, k.n)
    return (2, k.i, 0, ())


def is_central(k) -> bool:
    return isinstance(k, (K0, Ki))


class ToroidalElement(SparseVector):
    """Finite combination of generator keys."""

    __slots__ = ()

    def terms(self, key=None):
        return super().terms(key or key_order)


def _zero_tuple(r):
    return (0,) * r


class Toroidal:
    """The toroidal algebra over ``g`` with ``r`` extra loop variables (r = 0 gives the affine algebra)."""

    def __init__(self, g: SimpleLieData | str, r: int):
        if r < 0:
            raise ValueError("rank must be non-negative")
        self.g = get_algebra(g)
        self.r = r
        self._cache: dict = {}

    # --- builders ---------------------------------------------------------
    def _check_key(self, k):
        if isinstance(k, G):
            self.g.index(k.a)
            if len(k.n) != self.r:
                raise RankMismatch(f"multi-index {k.n} has length {len(k.n)}, algebra rank is {self.r}")
        elif isinstance(k, K0):
            if len(k.n) != self.r:
                raise RankMismatch(f"multi-index {k.n} has length {len(k.n)}, algebra rank is {self.r}")
        elif isinstance(k, Ki):
            if not 1 <= k.i <= self.r:
                raise RankMismatch(f"K_{k.i} does not exist for rank {self.r}")
        else:
            raise TypeError(f"not a generator key: {k!r}")
        return k

    def key(self, a, n0: int, n: Sequence[int] = ()) -> G:
        return self._check_key(G(self.g.index(a), int(n0), tuple(int(x) for x in n)))

    def gen(self, a, n0: int, n: Sequence[int] = (), coeff=1) -> ToroidalElement:
        return ToroidalElement.basis(self.key(a, n0, n), coeff)

    def k0(self, n: Sequence[int] = (), coeff=1) -> ToroidalElement:
        return ToroidalElement.basis(self._check_key(K0(tuple(int(x) for x in n))), coeff)

    def k(self, i: int, coeff=1) -> ToroidalElement:
        return ToroidalElement.basis(self._check_key(Ki(int(i))), coeff)

    def element(self, x: GVec, n0: int, n: Sequence[int] = ()) -> ToroidalElement:
        """``x (x) t0^n0 t^n`` for a general g-element ``x``."""
        n = tuple(n)
        return ToroidalElement({self.key(b, n0, n): c for b, c in x.items()})

    # --- bracket ----------------------------------------------------------
    def bracket_keys(self, u, v) -> ToroidalElement:
        ck = (u, v)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        self._check_key(u)
        self._check_key(v)
        if not (isinstance(u, G) and isinstance(v, G)):
            out = ToroidalElement()
        else:
            a, b = u.a, v.a
            s0 = u.n0 + v.n0
            s = tuple(x + y for x, y in zip(u.n, v.n))
            terms: dict = {}
            for k, c in self.g.basis_bracket(a, b).items():
                terms[G(k, s0, s)] = c
            ab = self.g.form[a][b]
            if ab and s0 == 0:
                if u.n0:
                    terms[K0(s)] = terms.get(K0(s), 0) + u.n0 * ab
                if all(x == 0 for x in s):
                    for i, ni in enumerate(u.n, start=1):
                        if ni:
                            terms[Ki(i)] = terms.get(Ki(i), 0) + ni * ab
            out = ToroidalElement(terms)
        self._cache[ck] = out
        return out

    def bracket(self, u: ToroidalElement, v: ToroidalElement) -> ToroidalElement:
        out = ToroidalElement()
        for ku, cu in u.items():
            for kv, cv in v.items():
                out = out + (cu * cv) * self.bracket_keys(ku, kv)
        return out

    def jacobi_check(self, u, v, w) -> bool:
        b = self.bracket
        return (b(u, b(v, w)) + b(v, b(w, u)) + b(w, b(u, v))).is_zero()

    def invariant_form(self, a, b) -> Fraction:
        a = a if isinstance(a, GVec) else self.g.vec(a)
        b = b if isinstance(b, GVec) else self.g.vec(b)
        if any(not 0 <= i < self.g.dimension for i in list(a) + list(b)):
            raise IndexOutOfRange("element outside the configured algebra")
        return self.g.form_value(a, b)

    def nilpotent_basis(self) -> list[GVec]:
        """Basis of g whose members satisfy <a,a> = 0, [a,a] = 0 and are ad-nilpotent."""
        basis = self.g.nilpotent
        if basis is None:
            raise BasisSearchFailed(f"no nilpotent basis stored for {self.g.name}")
        n = self.g.dimension
        if len(basis) != n or matrix_rank([[v.get(i) for i in range(n)] for v in basis]) != n:
            raise BasisSearchFailed("stored nilpotent basis is not a basis")
        for v in basis:
            if self.g.form_value(v, v) != 0 or not self.g.bracket(v, v).is_zero():
                raise BasisSearchFailed(f"{v!r} is not isotropic")
            if not self.g.ad_nilpotent(v):
                raise BasisSearchFailed(f"{v!r} is not ad-nilpotent")
        return list(basis)

    # --- sampling ---------------------------------------------------------
    def random_element(self, rng: random.Random, terms: int = 3, lo: int = -3, hi: int = 3,
                       central: bool = True) -> ToroidalElement:
        out = {}
        for _ in range(terms):
            roll = rng.random() if central else 0.0
            n = tuple(rng.randint(lo, hi) for _ in range(self.r))
            if roll < 0.8:
                k = G(rng.randrange(self.g.dimension), rng.randint(lo, hi), n)
            elif roll < 0.9 or self.r == 0:
                k = K0(n)
            else:
                k = Ki(rng.randint(1, self.r))
            out[k] = out.get(k, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        return ToroidalElement(out)

    def key_str(self, k) -> str:
        return key_str(self.g, k)


def key_str(g: SimpleLieData, k) -> str:
    if isinstance(k, G):
        if not k.n:
            return f"{g.labels[k.a]}({k.n0})"
        return f"{g.labels[k.a]}({k.n0},({','.join(map(str, k.n))}))"
    if isinstance(k, K0):
        return f"K0(({','.join(map(str, k.n))}))"
    return f"K{k.i}"
