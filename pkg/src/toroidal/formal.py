"""Formal series in x0, x1, ..., xr acting on module vectors.

Conventions
-----------
A generating series ``a(x0, x) = sum a(n0, n) x0^(-n0-1) x^(-n-1)`` is stored
by *modes*: ``series.coeff(n0, n)`` is ``a(n0, n) w``.  Plain
:class:`FormalSeries` objects are indexed by *exponents*.  Windows
(:class:`ExponentWindow`) are always in exponents; use
:meth:`ExponentWindow.from_modes` to build one from mode bounds.

Deltas are never expanded into stored data.  A factor in one variable pair
``(x, y)`` is a sum of terms ``c x^a y^b d_y^n (y^-1 delta(x/y))``; its
``x^i y^j`` coefficient is ``c * ff(a - i - 1, n)`` when
``j = a + b - 1 - n - i`` and zero otherwise (``ff`` = falling factorial).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import NoTruncationBound, WindowTooSmall, ZeroPoint
from .exact import LaurentPoly, expand_inverse, scalar, strip_monomial_factor
from .lie import G, K0, Ki, Toroidal, ToroidalElement
from .linear import Vec

Modes = tuple[int, ...]


# --- windows ----------------------------------------------------------------

@dataclass(frozen=True)
class ExponentWindow:
    """Inclusive exponent bounds for x0 and each of x1..xr."""

    x0: tuple[int, int]
    x: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x0", tuple(int(v) for v in self.x0))
        object.__setattr__(self, "x", tuple(tuple(int(v) for v in b) for b in self.x))
        for lo, hi in (self.x0,) + self.x:
            if lo > hi:
                raise ValueError(f"empty window range [{lo}, {hi}]")

    @classmethod
    def cube(cls, lo: int, hi: int, r: int) -> ExponentWindow:
        return cls((lo, hi), ((lo, hi),) * r)

    @classmethod
    def from_modes(cls, n0: tuple[int, int], n: Sequence[tuple[int, int]] = ()) -> ExponentWindow:
        """Window whose exponents cover exactly the given mode ranges (e = -n - 1)."""
        flip = lambda b: (-b[1] - 1, -b[0] - 1)
        return cls(flip(n0), tuple(flip(b) for b in n))

    @property
    def rank(self) -> int:
        return len(self.x)

    @property
    def bounds(self) -> tuple[tuple[int, int], ...]:
        return (self.x0,) + self.x

    def ranges(self):
        return [range(lo, hi + 1) for lo, hi in self.bounds]

    def points(self):
        """All exponent tuples ``(e0, e1, ..., er)`` in lexicographic order."""
        return itertools.product(*self.ranges())

    def modes(self):
        """All mode tuples ``(n0, n)`` covered by the window, ascending."""
        for n0 in range(-self.x0[1] - 1, -self.x0[0]):
            for n in itertools.product(*(range(-hi - 1, -lo) for lo, hi in self.x)):
                yield n0, tuple(n)

    def contains(self, exps: Sequence[int]) -> bool:
        return all(lo <= e <= hi for e, (lo, hi) in zip(exps, self.bounds))

    def size(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in self.bounds)

    def to_json(self) -> dict:
        return {"x0": list(self.x0), "x": [list(b) for b in self.x]}

    @classmethod
    def from_json(cls, data) -> ExponentWindow:
        return cls(tuple(data["x0"]), tuple(tuple(b) for b in data.get("x", [])))


def mode_of(exponent: int) -> int:
    return -exponent - 1


exponent_of = mode_of  # the map e <-> -e-1 is an involution


# --- plain formal series ----------------------------------------------------

class FormalSeries:
    """A series in ``nvars`` variables given by a coefficient callable on exponents.

    If ``window`` is set, coefficients are only known inside it and queries
    outside raise :class:`WindowTooSmall`.
    """

    def __init__(self, nvars: int, coeff: Callable[[tuple[int, ...]], object],
                 window: Sequence[tuple[int, int]] | None = None, zero=Fraction(0)):
        self.nvars = nvars
        self._coeff = coeff
        self.window = None if window is None else tuple(tuple(b) for b in window)
        self.zero = zero

    def coeff(self, exps: Sequence[int]):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents")
        if self.window is not None:
            for e, (lo, hi) in zip(exps, self.window):
                if not lo <= e <= hi:
                    raise WindowTooSmall(f"exponent {e} outside known range [{lo}, {hi}]")
        return self._coeff(exps)

    __getitem__ = coeff

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> FormalSeries:
        return cls(1, lambda e: p.coeff(e[0]))

    @classmethod
    def from_dict(cls, nvars: int, data: dict, zero=Fraction(0)) -> FormalSeries:
        return cls(nvars, lambda e: data.get(e, zero), zero=zero)

    def times_poly(self, f: LaurentPoly, var: int = 0) -> FormalSeries:
        """``f(x_var) * self``; the result's known window shrinks accordingly."""
        items = list(f.items())

        def c(exps):
            out = self.zero
            for e, fe in items:
                out = out + fe * self._coeff(exps[:var] + (exps[var] - e,) + exps[var + 1:])
            return out

        window = None
        if self.window is not None and items:
            lo, hi = self.window[var]
            win = list(self.window)
            win[var] = (lo + f.degree, hi + f.low)
            window = win if win[var][0] <= win[var][1] else None
        return FormalSeries(self.nvars, c, window, self.zero)

    def residue(self, var: int, power: int = 0) -> FormalSeries:
        """Coefficient of ``x_var^-1`` in ``x_var^power * self`` (a series in the other variables)."""
        target = -1 - power
        if self.window is not None:
            lo, hi = self.window[var]
            if not lo <= target <= hi:
                raise WindowTooSmall(f"residue needs exponent {target}, window has [{lo}, {hi}]")
        window = None if self.window is None else self.window[:var] + self.window[var + 1:]
        return FormalSeries(self.nvars - 1, lambda e: self._coeff(e[:var] + (target,) + e[var:]),
                            window, self.zero)

    def __add__(self, other: FormalSeries) -> FormalSeries:
        return FormalSeries(self.nvars, lambda e: self._coeff(e) + other._coeff(e), _meet(self.window, other.window), self.zero)

    def __sub__(self, other: FormalSeries) -> FormalSeries:
        return FormalSeries(self.nvars, lambda e: self._coeff(e) - other._coeff(e), _meet(self.window, other.window), self.zero)

    def first_mismatch(self, other: FormalSeries, points: Iterable[tuple[int, ...]]):
        for p in points:
            a, b = self.coeff(p), other.coeff(p)
            if a != b:
                return p, a, b
        return None


def _meet(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return tuple((max(x[0], y[0]), min(x[1], y[1])) for x, y in zip(a, b))


def delta_series(a=1) -> FormalSeries:
    """``delta(a/x) = sum_k a^k x^-k`` (``a = 1`` gives ``delta(x)``)."""
    a = scalar(a)
    if a == 0:
        raise ZeroPoint("delta(a/x) needs a != 0")
    return FormalSeries(1, lambda e: a ** (-e[0]))


# --- delta normal form ------------------------------------------------------

def falling(x: int, n: int) -> int:
    out = 1
    for k in range(n):
        out *= x - k
    return out


@dataclass(frozen=True)
class PairDelta:
    """Sum of ``c x^a y^b (d/dy)^n (y^-1 delta(x/y))`` in one variable pair."""

    terms: tuple[tuple[Fraction, int, int, int], ...]

    @classmethod
    def single(cls, c=1, a: int = 0, b: int = 0, n: int = 0) -> PairDelta:
        return cls(((scalar(c), a, b, n),))

    def coeff(self, i: int, j: int) -> Fraction:
        out = Fraction(0)
        for c, a, b, n in self.terms:
            if j == a + b - 1 - n - i:
                out += c * falling(a - i - 1, n)
        return out

    def support(self, i: int):
        """Pairs ``(j, coefficient)`` with nonzero ``x^i y^j`` coefficient."""
        acc: dict[int, Fraction] = {}
        for c, a, b, n in self.terms:
            j = a + b - 1 - n - i
            acc[j] = acc.get(j, 0) + c * falling(a - i - 1, n)
        return [(j, v) for j, v in acc.items() if v]

    def times_difference_power(self, m: int) -> PairDelta:
        """Multiply by ``(x - y)^m``."""
        out = []
        for c, a, b, n in self.terms:
            for k in range(m + 1):
                out.append((c * math.comb(m, k) * (-1) ** (m - k), a + k, b + m - k, n))
        return PairDelta(tuple(out))

    def scale(self, s) -> PairDelta:
        s = scalar(s)
        return PairDelta(tuple((s * c, a, b, n) for c, a, b, n in self.terms))

    def series(self) -> FormalSeries:
        return FormalSeries(2, lambda e: self.coeff(e[0], e[1]))


def delta_identity_check(m: int, n: int, window: ExponentWindow) -> bool:
    """``(x1-x2)^m (1/n!) d2^n x2^-1 delta(x1/x2)``: zero when m > n, else ``(1/(n-m)!) d2^(n-m) x2^-1 delta``.

    ``window.x0`` bounds the x1 exponent and ``window.x[0]`` the x2 exponent.
    """
    if m < 0 or n < 0:
        raise ValueError("m, n must be non-negative")
    lhs = PairDelta.single(Fraction(1, math.factorial(n)), 0, 0, n).times_difference_power(m)
    rhs = PairDelta(()) if m > n else PairDelta.single(Fraction(1, math.factorial(n - m)), 0, 0, n - m)
    xb = window.x[0] if window.x else window.x0
    return all(lhs.coeff(i, j) == rhs.coeff(i, j)
               for i in range(window.x0[0], window.x0[1] + 1) for j in range(xb[0], xb[1] + 1))


def delta_substitution_check(f: LaurentPoly, a, window: ExponentWindow) -> bool:
    """``f(x) delta(a/x) == f(a) delta(a/x)`` on the x-exponents of ``window.x0``."""
    a = scalar(a)
    if a == 0:
        raise ZeroPoint("substitution point must be nonzero")
    d = delta_series(a)
    lhs = FormalSeries(1, d.coeff).times_poly(f)
    fa = f(a)
    lo, hi = window.x0
    return all(lhs.coeff((e,)) == fa * d.coeff((e,)) for e in range(lo, hi + 1))


# --- generating series ------------------------------------------------------

class GeneratingSeries:
    """``alpha(x0, x) w`` stored by modes.

    ``x0_floor``: F with ``coeff(n0, .) == 0`` for all n0 > F (restricted case).
    ``floor_fn(q)``: F with ``(q(x0) alpha)(n0, .) == 0`` for n0 > F, or None.
    ``annihilator``: a polynomial q0 (no zero roots) known to satisfy q0 alpha == 0.
    """

    def __init__(self, rank: int, coeff: Callable[[int, Modes], object], *, x0_floor: int | None = None,
                 floor_fn: Callable[[LaurentPoly], int | None] | None = None,
                 annihilator: LaurentPoly | None = None, zero=None, label: str = ""):
        self.rank = rank
        self._coeff = coeff
        self.x0_floor = x0_floor
        self.floor_fn = floor_fn
        self.annihilator = annihilator
        self.zero = Vec() if zero is None else zero
        self.label = label
        self._cache: dict = {}

    def coeff(self, n0: int, n: Sequence[int] = ()):
        n = tuple(n)
        key = (n0, n)
        hit = self._cache.get(key)
        if hit is None:
            if self.x0_floor is not None and n0 > self.x0_floor:
                hit = self.zero
            else:
                hit = self._coeff(n0, n)
            self._cache[key] = hit
        return hit

    __call__ = coeff

    @property
    def restricted(self) -> bool:
        return self.x0_floor is not None

    def truncation_floor(self, q: LaurentPoly) -> int:
        """F with ``(q alpha)(n0, .) == 0`` for n0 > F; ``q`` an ordinary polynomial, q(0) != 0."""
        if self.annihilator is not None and self.annihilator.divides(q):
            return -1
        if self.x0_floor is not None:
            return self.x0_floor
        if self.floor_fn is not None:
            f = self.floor_fn(q)
            if f is not None:
                return f
        raise NoTruncationBound(f"no certified x0-truncation for {q} times {self.label or 'series'}")

    def times_poly(self, f: LaurentPoly, var: int = 0) -> GeneratingSeries:
        """``f(x_var) alpha``: mode ``n`` picks up ``sum_e f_e alpha(n + e)`` in that variable."""
        items = list(f.items())

        def c(n0, n):
            out = self.zero
            for e, fe in items:
                if var == 0:
                    out = out + fe * self.coeff(n0 + e, n)
                else:
                    out = out + fe * self.coeff(n0, n[:var - 1] + (n[var - 1] + e,) + n[var:])
            return out

        floor = None
        if self.x0_floor is not None:
            floor = self.x0_floor - (f.low if var == 0 and not f.is_zero() else 0)
        return GeneratingSeries(self.rank, c, x0_floor=floor, zero=self.zero, label=f"({f})*{self.label}")

    def _combine(self, other: GeneratingSeries, sign: int) -> GeneratingSeries:
        floor = None
        if self.x0_floor is not None and other.x0_floor is not None:
            floor = max(self.x0_floor, other.x0_floor)

        def ff(q):
            try:
                return max(self.truncation_floor(q), other.truncation_floor(q))
            except NoTruncationBound:
                return None

        op = "+" if sign > 0 else "-"
        return GeneratingSeries(
            self.rank, lambda n0, n: self.coeff(n0, n) + sign * other.coeff(n0, n),
            x0_floor=floor, floor_fn=ff, zero=self.zero, label=f"{self.label}{op}{other.label}")

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, s) -> GeneratingSeries:
        s = scalar(s)
        return GeneratingSeries(self.rank, lambda n0, n: s * self.coeff(n0, n), x0_floor=self.x0_floor,
                                floor_fn=self.floor_fn, annihilator=self.annihilator, zero=self.zero,
                                label=f"{s}*{self.label}")

    def as_formal(self) -> FormalSeries:
        """Exponent-indexed view."""
        return FormalSeries(self.rank + 1, lambda e: self.coeff(-e[0] - 1, tuple(-x - 1 for x in e[1:])),
                            zero=self.zero)

    def first_mismatch(self, other, window: ExponentWindow):
        for n0, n in window.modes():
            a, b = self.coeff(n0, n), other.coeff(n0, n)
            if a != b:
                return (n0, n), a, b
        return None

    def vanishes_on(self, window: ExponentWindow) -> bool:
        return all(self.coeff(n0, n) == 0 for n0, n in window.modes())


def action_series(W, a, w: Vec) -> GeneratingSeries:
    """``a(x0, x) w`` on a module; ``a`` is a g-basis index/label or ``"K0"``."""
    r = W.rank
    zero_n = (0,) * r
    if a == "K0":
        return GeneratingSeries(
            r, lambda n0, n: W.apply(K0(tuple(n)), w) if n0 == -1 else Vec(),
            x0_floor=-1, label="K0(x)")
    a = W.g.index(a)
    floor = W.vector_restriction_bound(a, zero_n, w) if W.restricted else None
    return GeneratingSeries(
        r, lambda n0, n: W.apply(G(a, n0, tuple(n)), w), x0_floor=floor,
        floor_fn=lambda q: W.vector_series_floor(q, a, w), label=f"{W.g.labels[a]}(x)")


# --- the projection psi -----------------------------------------------------

def psi_weights(p0: LaurentPoly, floor: int, n0: int) -> list[Fraction]:
    """beta_0..beta_T with ``psi(alpha)(n0) = sum_t beta_t alpha(n0 + t)``.

    ``floor`` certifies ``(q alpha)(m) = 0`` for m > floor, where ``q`` is p0
    with its monomial factor stripped.  Empty when n0 > floor.
    """
    _, q = strip_monomial_factor(p0)
    length = floor - n0
    if length < 0:
        return []
    inv = expand_inverse(q, length)
    beta = [Fraction(0)] * (length + q.degree + 1)
    for i, c in enumerate(inv):
        if c:
            for e, qe in q.items():
                beta[i + e] += c * qe
    return beta


def psi_project(alpha: GeneratingSeries, p0: LaurentPoly, n0: int, n: Sequence[int] = ()):
    """Coefficient ``psi(alpha)(n0, n)`` of the restricted projection of ``alpha``.

    Computed as the finite sum ``sum_t beta_t alpha(n0 + t, n)`` where the
    beta_t come from the expansion of 1/p0 in non-negative powers of x0.
    """
    _, q = strip_monomial_factor(p0)
    floor = alpha.truncation_floor(q)
    out = alpha.zero
    for t, b in enumerate(psi_weights(q, floor, n0)):
        if b:
            out = out + b * alpha.coeff(n0 + t, n)
    return out


def psi_series(alpha: GeneratingSeries, p0: LaurentPoly) -> GeneratingSeries:
    _, q = strip_monomial_factor(p0)
    floor = alpha.truncation_floor(q)
    return GeneratingSeries(alpha.rank, lambda n0, n: psi_project(alpha, q, n0, n), x0_floor=floor,
                            zero=alpha.zero, label=f"psi({alpha.label})")


def decompose_series(alpha: GeneratingSeries, p0) -> tuple[GeneratingSeries, GeneratingSeries]:
    """``alpha = tilde + check``: tilde restricted, check killed by p0's nonzero-root part.

    ``p0`` may be a polynomial or a witness carrying one.
    """
    p0 = getattr(p0, "p0", p0)
    _, q = strip_monomial_factor(p0)
    tilde = psi_series(alpha, q)
    check = GeneratingSeries(alpha.rank, lambda n0, n: alpha.coeff(n0, n) - tilde.coeff(n0, n),
                             annihilator=q if not q.is_constant() else None, zero=alpha.zero,
                             label=f"check({alpha.label})")
    return tilde, check


# --- operator-valued series -------------------------------------------------

class OperatorSeries:
    """``alpha(x0, x)`` as an operator: ``op(n0, n, v)`` is ``alpha(n0, n) v``."""

    def __init__(self, rank: int, op: Callable[[int, Modes, Vec], Vec],
                 series_of: Callable[[Vec], GeneratingSeries] | None = None, label: str = ""):
        self.rank = rank
        self._op = op
        self._series_of = series_of
        self.label = label

    def apply(self, n0: int, n: Sequence[int], v: Vec) -> Vec:
        return self._op(n0, tuple(n), v)

    def on(self, w: Vec) -> GeneratingSeries:
        if self._series_of is not None:
            return self._series_of(w)
        return GeneratingSeries(self.rank, lambda n0, n: self._op(n0, n, w), label=f"{self.label}.w")

    def tilde(self, p0: LaurentPoly) -> OperatorSeries:
        """The restricted projection, vector by vector."""
        return OperatorSeries(self.rank, lambda n0, n, v: psi_project(self.on(v), p0, n0, n),
                              label=f"psi({self.label})")

    def check(self, p0: LaurentPoly) -> OperatorSeries:
        t = self.tilde(p0)
        return OperatorSeries(self.rank, lambda n0, n, v: self.apply(n0, n, v) - t.apply(n0, n, v),
                              label=f"check({self.label})")


def action_operator(W, a) -> OperatorSeries:
    """``pi(a(x0, x))`` on ``W``, with series metadata taken from the module."""
    if a == "K0":
        return OperatorSeries(W.rank, lambda n0, n, v: W.apply(K0(n), v) if n0 == -1 else Vec(),
                              lambda v: action_series(W, "K0", v), "K0")
    a = W.g.index(a)
    return OperatorSeries(W.rank, lambda n0, n, v: W.apply(G(a, n0, n), v),
                          lambda v: action_series(W, a, v), W.g.labels[a])


# --- the bracket in generating-function form -------------------------------

def bracket_series_terms(T: Toroidal, a: int, b: int):
    """Right-hand side of the generating-function bracket ``[a(x0,x), b(y0,y)]``.

    Returns ``(kind, coefficient, factors)`` triples: ``kind`` is ``"g"`` (the
    series ``[a,b](y0, y)``), ``"K0"`` (``K0(y)``, no y0 dependence) or ``("K", j)``
    (constant), and ``factors`` holds one :class:`PairDelta` per variable pair.
    """
    g, r = T.g, T.r
    out = []
    ab = g.basis_bracket(a, b)
    base = PairDelta.single()
    if ab:
        out.append(("g", ab, (base,) * (r + 1)))
    form = g.form[a][b]
    if form:
        out.append(("K0", form, (PairDelta.single(1, 0, 0, 1),) + (base,) * r))
        inv0 = PairDelta.single(1, -1, 0, 0)
        for j in range(1, r + 1):
            facs = [inv0] * (r + 1)
            facs[j] = PairDelta.single(1, 0, 0, 1)
            out.append((("K", j), form, tuple(facs)))
    return out


def bracket_series_rhs_element(T: Toroidal, a: int, b: int, xe: Sequence[int], ye: Sequence[int],
                     terms=None) -> ToroidalElement:
    """The ``x^xe y^ye`` coefficient of the right-hand side, as an element of the algebra.

    Each delta product is convolved with the series that multiplies it; a
    series without a y-variable only has exponent 0 there.
    """
    terms = bracket_series_terms(T, a, b) if terms is None else terms
    out: dict = {}
    for kind, coeff, factors in terms:
        # for each pair: x-exponent fixed, the delta's y-exponent is forced, the
        # series supplies the remainder ye - j
        c = Fraction(1)
        rest = []
        for k, fac in enumerate(factors):
            part = Fraction(0)
            shift = None
            for j, v in fac.support(xe[k]):
                part, shift = v, ye[k] - j
            if not part:
                c = 0
                break
            c *= part
            rest.append(shift)
        if not c:
            continue
        modes = [-e - 1 for e in rest]
        if kind == "g":
            for k, v in coeff.items():
                key = G(k, modes[0], tuple(modes[1:]))
                out[key] = out.get(key, 0) + c * v
        elif kind == "K0":
            if rest[0] != 0:
                continue
            key = K0(tuple(modes[1:]))
            out[key] = out.get(key, 0) + c * coeff
        else:
            if any(rest):
                continue
            key = Ki(kind[1])
            out[key] = out.get(key, 0) + c * coeff
    return ToroidalElement(out)


def bracket_series_check(T: Toroidal, a: int, b: int, window_x: ExponentWindow,
                         window_y: ExponentWindow | None = None):
    """Compare the generating-function bracket with the mode bracket on the window.

    Returns None on success or the first counterexample dict.
    """
    window_y = window_y or window_x
    terms = bracket_series_terms(T, a, b)
    for xe in window_x.points():
        nx = tuple(-e - 1 for e in xe)
        for ye in window_y.points():
            ny = tuple(-e - 1 for e in ye)
            lhs = T.bracket_keys(G(a, nx[0], nx[1:]), G(b, ny[0], ny[1:]))
            rhs = bracket_series_rhs_element(T, a, b, xe, ye, terms)
            if lhs != rhs:
                return {"x": xe, "y": ye, "lhs": lhs, "rhs": rhs}
    return None


def commutator_series_check(a, b, W, w: Vec, window: ExponentWindow,
                            window_y: ExponentWindow | None = None) -> bool:
    """Both sides of the generating-function bracket applied to ``w``, coefficient-wise."""
    T = W.algebra
    a, b = W.g.index(a), W.g.index(b)
    window_y = window_y or window
    terms = bracket_series_terms(T, a, b)
    for xe in window.points():
        nx = tuple(-e - 1 for e in xe)
        ka = G(a, nx[0], nx[1:])
        for ye in window_y.points():
            ny = tuple(-e - 1 for e in ye)
            kb = G(b, ny[0], ny[1:])
            lhs = W.apply(ka, W.apply(kb, w, strict=True)) - W.apply(kb, W.apply(ka, w, strict=True))
            rhs = W.apply(bracket_series_rhs_element(T, a, b, xe, ye, terms), w)
            if lhs != rhs:
                return False
    return True


# --- bracket of two series with delta-derivative structure ------------------

def commutator_coefficient(alpha: OperatorSeries, beta: OperatorSeries, xm: tuple[int, Modes],
                           ym: tuple[int, Modes], w: Vec) -> Vec:
    """``[alpha(n0, n), beta(m0, m)] w``."""
    (n0, n), (m0, m) = xm, ym
    return (alpha.apply(n0, n, beta.apply(m0, m, w)) - beta.apply(m0, m, alpha.apply(n0, n, w)))


def delta_expansion_coefficient(gammas: Sequence[OperatorSeries], xm: tuple[int, Modes],
                                ym: tuple[int, Modes], w: Vec) -> Vec:
    """Mode coefficient of ``sum_j (1/j!) gamma_j(y0, y) d_y0^j x0^-1 delta(y0/x0) prod x_i^-1 delta(y_i/x_i)``."""
    (n0, n), (m0, m) = xm, ym
    xe = (-n0 - 1,) + tuple(-v - 1 for v in n)
    ye = (-m0 - 1,) + tuple(-v - 1 for v in m)
    out = Vec()
    base = PairDelta.single()
    # pairs i >= 1: plain delta, the series exponent is forced
    rest = []
    for k in range(1, len(xe)):
        (j, v), = base.support(xe[k])
        rest.append(ye[k] - j)
    for j, gamma in enumerate(gammas):
        fac = PairDelta.single(Fraction(1, math.factorial(j)), 0, 0, j)
        for dj, v in fac.support(xe[0]):
            s0 = ye[0] - dj
            out = out + v * gamma.apply(-s0 - 1, tuple(-e - 1 for e in rest), w)
    return out


def residue_gamma(alpha: OperatorSeries, beta: OperatorSeries, j: int, ym: tuple[int, Modes], w: Vec) -> Vec:
    """``Res_x ... Res_x0 (x0 - y0)^j [alpha(x0, x), beta(y0, y)]`` at mode ``ym``, applied to ``w``.

    Expanding ``(x0 - y0)^j`` binomially, the x0-residue picks mode ``k`` of
    alpha for the ``x0^k`` term; the other residues pick mode 0 in each x_i
    (coefficient of ``x_i^-1``).
    """
    m0, m = ym
    out = Vec()
    zero_n = (0,) * len(m)
    for k in range(j + 1):
        c = math.comb(j, k) * (-1) ** (j - k)
        # y0^(j-k) shifts the y0 mode up by (j-k)
        out = out + c * commutator_coefficient(alpha, beta, (k, zero_n), (m0 + (j - k), m), w)
    return out


def delta_expansion_check(alpha: OperatorSeries, beta: OperatorSeries, gammas: Sequence[OperatorSeries],
                          modes_x, modes_y, vectors) -> dict | None:
    """Compare ``[alpha, beta]`` with the delta expansion built from ``gammas``; first mismatch or None."""
    for w in vectors:
        for xm in modes_x:
            for ym in modes_y:
                lhs = commutator_coefficient(alpha, beta, xm, ym, w)
                rhs = delta_expansion_coefficient(gammas, xm, ym, w)
                if lhs != rhs:
                    return {"x": xm, "y": ym, "w": w, "lhs": lhs, "rhs": rhs}
    return None


def direct_sum_nullity_check(alpha: GeneratingSeries, p0: LaurentPoly, window: ExponentWindow) -> bool:
    """A series that is restricted and killed by p0 (nonconstant nonzero-root part) vanishes.

    Returns True iff the premises fail or ``alpha`` vanishes on the window.
    """
    _, q = strip_monomial_factor(p0)
    if q.is_constant() or not alpha.restricted:
        return True
    if not alpha.times_poly(q).vanishes_on(window):
        return True
    return alpha.vanishes_on(window)


def check_report(identity: str, window: ExponentWindow | None, counterexample, **extra) -> dict:
    rep = {"identity": identity, "window": None if window is None else window.to_json(),
           "pass": counterexample is None, "counterexample": counterexample}
    rep.update(extra)
    return rep
