"""Exact scalars, sparse Laurent polynomials and truncated power series.

Scalars are :class:`fractions.Fraction`; nothing in this package touches
floating point.  Polynomials are sparse maps ``exponent -> Fraction`` and may
carry negative exponents.  Power series are dense prefixes
``c_0 + c_1 x + ... + c_w x^w``.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ConstantTermZero, EmptyPolynomial, SingularSystem

Scalar = Fraction
MultiIndex = tuple  # tuple[int, ...] of length r


def scalar(value) -> Fraction:
    """Coerce ``value`` to an exact scalar.  Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot make an exact scalar from {type(value).__name__}")


def scalar_str(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(q)


def multi_index(entries: Iterable[int], r: int | None = None) -> tuple[int, ...]:
    idx = tuple(int(e) for e in entries)
    if r is not None and len(idx) != r:
        raise ValueError(f"multi-index {idx} has length {len(idx)}, expected {r}")
    return idx


class LaurentPoly:
    """Immutable Laurent polynomial in one variable with rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            v = scalar(v)
            if v:
                c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def constant(cls, c) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def x(cls) -> LaurentPoly:
        return cls({1: 1})

    @classmethod
    def from_roots(cls, roots: Iterable[object]) -> LaurentPoly:
        """prod (x - z) over ``roots`` (with repetition)."""
        p = cls.constant(1)
        for z in roots:
            p = p * cls({1: 1, 0: -scalar(z)})
        return p

    @classmethod
    def from_dense(cls, coeffs: Sequence[object], low: int = 0) -> LaurentPoly:
        return cls({low + i: c for i, c in enumerate(coeffs)})

    # --- inspection -------------------------------------------------------
    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def degree(self) -> int:
        if not self._c:
            raise EmptyPolynomial("the zero polynomial has no degree")
        return max(self._c)

    @property
    def low(self) -> int:
        if not self._c:
            raise EmptyPolynomial("the zero polynomial has no lowest exponent")
        return min(self._c)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self._c)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._c)

    def leading(self) -> Fraction:
        return self._c[self.degree]

    def dense(self) -> list[Fraction]:
        """Coefficients ``[c_0, ..., c_deg]``; requires non-negative exponents."""
        if not self._c:
            return []
        if not self.is_polynomial():
            raise ValueError("negative exponents present")
        return [self.coeff(e) for e in range(self.degree + 1)]

    # --- arithmetic -------------------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            raise ValueError("negative powers of polynomials are not Laurent polynomials")
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by x^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def derivative(self) -> LaurentPoly:
        return LaurentPoly({e - 1: e * v for e, v in self._c.items() if e})

    def __call__(self, a) -> Fraction:
        a = scalar(a)
        if a == 0 and any(e < 0 for e in self._c):
            raise ZeroDivisionError("negative exponent evaluated at 0")
        return sum((v * a**e for e, v in self._c.items()), Fraction(0))

    def monic(self) -> LaurentPoly:
        lead = self.leading()
        return LaurentPoly({e: v / lead for e, v in self._c.items()})

    def divmod(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Euclidean division of ordinary polynomials."""
        if other.is_zero():
            raise EmptyPolynomial("division by the zero polynomial")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise ValueError("divmod needs non-negative exponents")
        rem = dict(self._c)
        quo: dict[int, Fraction] = {}
        d, lead = other.degree, other.leading()
        while rem:
            top = max(rem)
            if top < d:
                break
            f = rem[top] / lead
            quo[top - d] = f
            for e, v in other._c.items():
                k = e + top - d
                nv = rem.get(k, 0) - f * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentPoly(quo), LaurentPoly(rem)

    def divides(self, other: LaurentPoly) -> bool:
        return other.divmod(self)[1].is_zero()

    # --- protocol ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if mono and v == 1:
                coef = ""
            elif mono and v == -1:
                coef = "-"
            else:
                coef = str(v) if not mono or v.denominator == 1 else f"({v})"
            parts.append(coef + mono)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict[str, str]:
        return {str(e): scalar_str(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> LaurentPoly:
        return cls({int(e): scalar(v) for e, v in data.items()})


def _as_poly(obj):
    if isinstance(obj, LaurentPoly):
        return obj
    if isinstance(obj, (numbers.Rational, str)) and not isinstance(obj, bool):
        return LaurentPoly.constant(obj)
    return NotImplemented


def poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two ordinary polynomials (gcd(0, 0) = 0)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def poly_lcm(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.is_zero() or q.is_zero():
        raise EmptyPolynomial("lcm with the zero polynomial")
    g = poly_gcd(p, q)
    return (p * q).divmod(g)[0].monic()


def strip_monomial_factor(p: LaurentPoly) -> tuple[int, LaurentPoly]:
    """Split ``p = x^shift * q`` with ``q(0) != 0`` and no negative exponents."""
    if p.is_zero():
        raise EmptyPolynomial("cannot strip the zero polynomial")
    shift = p.low
    return shift, p.shift(-shift)


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """First ``window + 1`` Taylor coefficients of a power series."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a truncated series keeps at least one coefficient")

    @property
    def window(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    def __iter__(self):
        return iter(self.coefficients)

    def times_poly(self, p: LaurentPoly) -> TruncatedPowerSeries:
        """Product with an ordinary polynomial, reduced mod x^(window+1)."""
        w = self.window
        out = [Fraction(0)] * (w + 1)
        for e, v in p.items():
            if e < 0:
                raise ValueError("negative exponent in a power-series product")
            for i in range(0, w + 1 - e):
                out[i + e] += v * self.coefficients[i]
        return TruncatedPowerSeries(tuple(out))

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly.from_dense(self.coefficients)


def expand_inverse(p: LaurentPoly, window: int) -> TruncatedPowerSeries:
    """Expansion of 1/p in non-negative powers of x, up to x^window.

    ``p`` must be an ordinary polynomial with ``p(0) != 0``; strip any
    monomial factor first with :func:`strip_monomial_factor`.
    """
    if p.is_zero():
        raise EmptyPolynomial("1/0 has no expansion")
    if window < 0:
        raise ValueError("window must be non-negative")
    if not p.is_polynomial():
        raise ConstantTermZero("negative exponents present; strip the monomial factor first")
    c0 = p.coeff(0)
    if c0 == 0:
        raise ConstantTermZero("p(0) = 0; strip the monomial factor first")
    dense = p.dense()
    q = [Fraction(0)] * (window + 1)
    q[0] = 1 / c0
    # p*q = 1: c0 q_n = -sum_{e>=1} p_e q_{n-e}
    for n in range(1, window + 1):
        acc = Fraction(0)
        for e in range(1, min(n, len(dense) - 1) + 1):
            acc += dense[e] * q[n - e]
        q[n] = -acc / c0
    return TruncatedPowerSeries(tuple(q))


def poly_roots_multiplicity_free(p: LaurentPoly) -> bool:
    """True iff every nonzero root of ``p`` is simple (gcd(q, q') constant)."""
    _, q = strip_monomial_factor(p)
    if q.is_constant():
        return True
    return poly_gcd(q, q.derivative()).is_constant()


def reduced_nonzero_part(p: LaurentPoly) -> LaurentPoly:
    """Monic squarefree part of ``p`` with the zero roots removed."""
    _, q = strip_monomial_factor(p)
    if q.is_constant():
        return LaurentPoly.constant(1)
    return q.divmod(poly_gcd(q, q.derivative()))[0].monic()


def solve_linear_system(matrix: Sequence[Sequence[object]], rhs: Sequence[object]) -> list:
    """Solve ``matrix @ x = rhs`` exactly for a square, nonsingular matrix.

    Entries of ``rhs`` may be any values closed under ``+`` and scalar ``*``
    (Fractions, module vectors, Lie algebra elements).
    """
    n = len(matrix)
    if len(rhs) != n or any(len(row) != n for row in matrix):
        raise ValueError("square system expected")
    a = [[scalar(v) for v in row] for row in matrix]
    b = list(rhs)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularSystem(f"matrix is singular (no pivot in column {col})")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        b[col] = inv * b[col]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[col])]
                b[i] = b[i] - f * b[col]
    return b


def matrix_rank(matrix: Sequence[Sequence[object]]) -> int:
    rows = [[scalar(v) for v in row] for row in matrix]
    if not rows:
        return 0
    rank, ncols = 0, len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[rank])]
        rank += 1
    return rank
