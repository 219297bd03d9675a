"""JSON module / witness descriptors.

Module descriptors::

    {"type": "eval", "factors": [{"g": "sl2", "m": 1, "z": ["2", "3"]}, ...]}
    {"type": "induced", "g": "sl2", "m": 0, "level": "1", "depth": 4}
    {"type": "restricted_eval", "factors": [{"module": <induced>, "z": ["2"]}, ...]}
    {"type": "tensor", "parts": [<descriptor>, ...]}

An eval/induced factor may give ``"rep": "defining"`` instead of ``m`` (any
algebra with a matrix realisation).  Polynomials are ``{"exp": "coeff"}`` maps
or ``{"roots": [...]}``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import DescriptorError, ToroidalError
from .exact import LaurentPoly, scalar
from .lie import get_algebra
from .modules import (EvalModule, FiniteIrrep, InducedModule, ModuleSpec, RestrictedEvalModule,
                      TensorModule, defining_module)
from .witness import CategoryWitness


def load_json(source, field: str = "descriptor"):
    """Parse a path, a JSON string, or pass a dict through."""
    if isinstance(source, dict):
        return source
    text = str(source)
    try:
        if not text.lstrip().startswith(("{", "[")):
            text = Path(text).read_text()
        return json.loads(text)
    except OSError as exc:
        raise DescriptorError(f"cannot read {source}: {exc.strerror}", field=field) from exc
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"malformed JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}", field=field) from exc


def _get(d, key, path, kind=None):
    if not isinstance(d, dict):
        raise DescriptorError(f"{path or 'descriptor'} must be an object", field=path or "descriptor")
    if key not in d:
        raise DescriptorError(f"missing field {key!r}", field=f"{path}.{key}" if path else key)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise DescriptorError(f"field {key!r} has the wrong type", field=f"{path}.{key}" if path else key)
    return v


def _wrap(path, fn, *args):
    try:
        return fn(*args)
    except DescriptorError:
        raise
    except (ToroidalError, ValueError, TypeError, KeyError) as exc:
        raise DescriptorError(str(exc), field=path) from exc


def _gmodule(d, path):
    g = _wrap(f"{path}.g", get_algebra, d.get("g", "sl2"))
    if "m" in d:
        m = d["m"]
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise DescriptorError("m must be a non-negative integer", field=f"{path}.m")
        if g.name != "sl2":
            raise DescriptorError("highest weight m is only supported for sl2", field=f"{path}.m")
        return FiniteIrrep(m, g)
    rep = d.get("rep")
    if rep == "defining":
        return _wrap(f"{path}.rep", defining_module, g)
    raise DescriptorError("give either m or rep", field=f"{path}.m")


def _point(d, path):
    z = _get(d, "z", path, list)
    return tuple(_wrap(f"{path}.z[{i}]", scalar, v) for i, v in enumerate(z))


def build_module(desc, path: str = "module") -> ModuleSpec:
    desc = load_json(desc, path)
    kind = _get(desc, "type", path, str)
    if kind == "eval":
        factors = _get(desc, "factors", path, list)
        if not factors:
            raise DescriptorError("at least one factor needed", field=f"{path}.factors")
        parts = [(_gmodule(f, f"{path}.factors[{i}]"), _point(f, f"{path}.factors[{i}]"))
                 for i, f in enumerate(factors)]
        return _wrap(f"{path}.factors", EvalModule, parts)
    if kind == "induced":
        U = _gmodule(desc, path)
        level = _wrap(f"{path}.level", scalar, desc.get("level", "1"))
        depth = _get(desc, "depth", path, int)
        if depth < 0:
            raise DescriptorError("depth must be non-negative", field=f"{path}.depth")
        return InducedModule(U, level, depth)
    if kind == "restricted_eval":
        factors = _get(desc, "factors", path, list)
        if not factors:
            raise DescriptorError("at least one factor needed", field=f"{path}.factors")
        parts = []
        for i, f in enumerate(factors):
            p = f"{path}.factors[{i}]"
            parts.append((build_module(_get(f, "module", p), f"{p}.module"), _point(f, p)))
        return _wrap(f"{path}.factors", RestrictedEvalModule, parts)
    if kind == "tensor":
        items = _get(desc, "parts", path, list)
        if not items:
            raise DescriptorError("at least one part needed", field=f"{path}.parts")
        parts = [build_module(p, f"{path}.parts[{i}]") for i, p in enumerate(items)]
        return _wrap(f"{path}.parts", TensorModule, parts)
    raise DescriptorError(f"unknown module type {kind!r}", field=f"{path}.type")


def parse_poly(data, path: str = "poly") -> LaurentPoly:
    if isinstance(data, dict) and "roots" in data:
        return _wrap(path, LaurentPoly.from_roots, data["roots"])
    if isinstance(data, dict):
        return _wrap(path, LaurentPoly.from_json, data)
    raise DescriptorError("polynomial must be an object", field=path)


def parse_witness(desc, path: str = "witness") -> CategoryWitness:
    desc = load_json(desc, path)
    cat = _get(desc, "category", path, str)
    polys = _get(desc, "p", path, list)
    if not polys:
        raise DescriptorError("p must list p0..pr", field=f"{path}.p")
    p0 = None if polys[0] is None else parse_poly(polys[0], f"{path}.p[0]")
    rest = tuple(parse_poly(q, f"{path}.p[{i}]") for i, q in enumerate(polys[1:], start=1))
    return _wrap(path, CategoryWitness, cat, p0, rest)
