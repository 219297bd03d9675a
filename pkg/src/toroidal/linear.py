"""Immutable sparse linear combinations with exact coefficients."""
from __future__ import annotations

import numbers
from collections.abc import Mapping
from fractions import Fraction

from .exact import scalar


class SparseVector(Mapping):
    """Finite linear combination ``sum c_k * k`` over hashable keys.

    Zero coefficients are never stored.  The integer ``0`` is accepted as the
    additive identity so ``sum()`` works without a start value.
    """

    __slots__ = ("_d", "_hash")

    def __init__(self, data: Mapping | None = None):
        d = {}
        if data:
            for k, v in data.items():
                v = scalar(v)
                if v:
                    d[k] = v
        self._d = d
        self._hash = None

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coeff})

    @classmethod
    def _from_clean(cls, d: dict):
        obj = cls.__new__(cls)
        obj._d = d
        obj._hash = None
        return obj

    def __getitem__(self, key) -> Fraction:
        return self._d[key]

    def get(self, key, default=Fraction(0)):
        return self._d.get(key, default)

    def __iter__(self):
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def _coerce(self, other):
        if isinstance(other, SparseVector):
            return other
        if isinstance(other, numbers.Number) and other == 0:
            return type(self)()
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = dict(self._d)
        for k, v in other._d.items():
            nv = d.get(k, 0) + v
            if nv:
                d[k] = nv
            else:
                d.pop(k, None)
        return type(self)._from_clean(d)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._from_clean({k: -v for k, v in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, SparseVector) or not isinstance(c, (numbers.Rational, str)):
            return NotImplemented
        c = scalar(c)
        if not c:
            return type(self)()
        return type(self)._from_clean({k: c * v for k, v in self._d.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, numbers.Number) and other == 0:
            return not self._d
        if isinstance(other, SparseVector):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def terms(self, key=None):
        """Items sorted by ``key`` (default: ``repr`` of the basis key)."""
        return sorted(self._d.items(), key=(lambda kv: key(kv[0])) if key else (lambda kv: repr(kv[0])))

    def map_keys(self, fn):
        """Linear extension of a basis map ``fn: key -> key``."""
        out: dict = {}
        for k, v in self._d.items():
            nk = fn(k)
            nv = out.get(nk, 0) + v
            if nv:
                out[nk] = nv
            else:
                out.pop(nk, None)
        return type(self)._from_clean(out)

    def __repr__(self) -> str:
        if not self._d:
            return f"{type(self).__name__}(0)"
        inner = ", ".join(f"{k!r}: {v}" for k, v in self.terms())
        return f"{type(self).__name__}({{{inner}}})"


class Vec(SparseVector):
    """A module vector over a basis of labels."""

    __slots__ = ()


def combine(pairs, zero=0):
    """``sum(c * v for c, v in pairs)`` that also works for scalar values."""
    total = zero
    for c, v in pairs:
        if c:
            total = total + c * v
    return total
