"""Command-line front end: ``toroidal {build,apply,verify}``.

Exit codes: 0 success, 1 a check failed (the report is still written), 2 bad
configuration (the message names the offending field).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import suites
from .descriptors import build_module, load_json, parse_witness
from .errors import DescriptorError, NotWithinValidWindow, ToroidalError
from .exact import scalar
from .formal import ExponentWindow
from .lie import K0, Ki, get_algebra
from .linear import Vec
from .modules import ModuleSpec

KEY_G = re.compile(r"^\s*([A-Za-z][\w]*)\(\s*(-?\d+)\s*(?:,\s*\(([^()]*)\))?\s*\)\s*$")
KEY_K0 = re.compile(r"^\s*K0\(\s*\(([^()]*)\)\s*\)\s*$")
KEY_KI = re.compile(r"^\s*K(\d+)\s*$")


class ConfigError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class RunConfig:
    suite: str | None = None
    algebra: str = "sl2"
    rank: int | None = None
    module: dict | None = None
    witness: dict | None = None
    window: ExponentWindow | tuple[int, int] | None = None
    seed: int = 0
    out: Path | None = None


# --- parsing helpers --------------------------------------------------------

def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(t) for t in text.split(",")) if text else ()


def parse_key(text: str, W: ModuleSpec):
    """``e(1,(1))``, ``e(1)`` (rank 0), ``K0((3))``, ``K1`` or a JSON object."""
    text = text.strip()
    if text.startswith("{"):
        d = json.loads(text)
        kind = d.get("kind", "G")
        if kind == "G":
            return W.algebra.key(d["a"], d["n0"], d.get("n", ()))
        if kind == "K0":
            return W.algebra._check_key(K0(tuple(d.get("n", ()))))
        return W.algebra._check_key(Ki(int(d["i"])))
    if m := KEY_K0.match(text):
        return W.algebra._check_key(K0(_ints(m.group(1))))
    if m := KEY_KI.match(text):
        return W.algebra._check_key(Ki(int(m.group(1))))
    if m := KEY_G.match(text):
        n = _ints(m.group(3)) if m.group(3) is not None else ()
        return W.algebra.key(m.group(1), int(m.group(2)), n)
    raise ValueError(f"cannot parse generator {text!r}")


def parse_vector(text: str, W: ModuleSpec) -> Vec:
    """A basis label as printed by ``build`` or a JSON map label -> scalar."""
    text = text.strip()
    if text.startswith("{"):
        d = json.loads(text)
        return Vec({W.label_from_str(k): scalar(v) for k, v in d.items()})
    return Vec.basis(W.label_from_str(text))


def parse_window(text: str, rank: int) -> ExponentWindow:
    if text.strip().startswith("{"):
        return ExponentWindow.from_json(json.loads(text))
    m = re.fullmatch(r"\s*(-?\d+)\.\.(-?\d+)\s*", text)
    if not m:
        raise ValueError("expected lo..hi or a JSON window")
    return ExponentWindow.cube(int(m.group(1)), int(m.group(2)), rank)


def _merge_window_args(argv: list[str]) -> list[str]:
    # "--window -4..4" would be taken for an option; glue the value on
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _dump(obj, out: Path | None):
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out is not None:
        out.write_text(text)
    sys.stdout.write(text)


# --- subcommands ------------------------------------------------------------

def cmd_build(args) -> int:
    W = build_module(load_json(args.descriptor, "module"))
    degrees: dict[int, int] = {}
    for lab in W.basis():
        degrees[W.degree(lab)] = degrees.get(W.degree(lab), 0) + 1
    summary = {
        "module": W.describe(),
        "rank": W.rank,
        "basis_count": len(W.basis()),
        "graded_dims": [degrees.get(k, 0) for k in range(max(degrees) + 1)],
        "basis": [W.label_str(b) for b in W.basis()][:64],
    }
    wit = W.witness()
    if wit is not None:
        from .exact import poly_roots_multiplicity_free
        summary["witness"] = dict(wit.to_json(), polynomials=[None if p is None else str(p)
                                                              for p in (wit.p0,) + wit.p],
                                  multiplicity_free=[poly_roots_multiplicity_free(p) for p in wit.p])
    _dump(summary, args.out)
    return 0


def cmd_apply(args) -> int:
    W = build_module(load_json(args.module, "module"))
    try:
        key = parse_key(args.key, W)
    except (ValueError, KeyError, ToroidalError) as exc:
        raise ConfigError("key", str(exc))
    try:
        v = parse_vector(args.vector, W)
    except (ValueError, ToroidalError) as exc:
        raise ConfigError("vector", str(exc))
    try:
        img = W.apply(key, v, strict=True)
    except NotWithinValidWindow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _dump(W.vec_str(img), args.out)
    return 0


def run_suite(cfg: RunConfig) -> dict:
    name = cfg.suite
    W = build_module(cfg.module, "module") if cfg.module is not None else None
    wit = parse_witness(cfg.witness) if cfg.witness is not None else None
    rank = cfg.rank if cfg.rank is not None else (W.rank if W is not None else None)

    def win(default_rank):
        if cfg.window is None:
            return None
        return parse_window(cfg.window, default_rank) if isinstance(cfg.window, str) else cfg.window

    if name == "bracket-jacobi":
        r = rank if rank is not None else 2
        w = win(r)
        lo, hi = w.x0 if w is not None else (-3, 3)
        rep = suites.suite_bracket_jacobi(cfg.algebra, r, lo, hi, cfg.seed)
    elif name == "eq2.3-coefficients":
        r = rank if rank is not None else 2
        rep = suites.suite_series_bracket(cfg.algebra, r, win(r), cfg.seed)
    elif name == "lemma3.2-center":
        r = rank if rank is not None else 1
        w = win(r)
        lo, hi = w.x0 if w is not None else (-3, 3)
        rep = suites.suite_center([W] if W is not None else None, r, lo, hi, cfg.seed)
    elif name == "delta-identities":
        w = win(1)
        lo, hi = w.x0 if w is not None else (-5, 5)
        rep = suites.suite_delta(lo, hi, cfg.seed)
    elif name == "psi-properties":
        rep = suites.suite_psi(W, wit, win(W.rank if W else 1), cfg.seed)
    elif name == "thm4.8-split":
        rep = suites.suite_split(W, wit, win(W.rank if W else 1), cfg.seed)
    elif name == "vandermonde":
        rep = suites.suite_vandermonde(W, cfg.seed)
    elif name == "integrability":
        rep = suites.suite_integrability(W, wit, cfg.seed)
    else:
        raise ConfigError("suite", f"unknown suite {name!r}; choose from {', '.join(suites.SUITES)}")
    return rep.to_json()


def cmd_verify(args) -> int:
    cfg = RunConfig(suite=args.suite, algebra=args.algebra, rank=args.rank, seed=args.seed, out=args.out)
    try:
        get_algebra(cfg.algebra)
    except ToroidalError as exc:
        raise ConfigError("algebra", str(exc))
    if cfg.rank is not None and cfg.rank < 1:
        raise ConfigError("rank", "rank must be at least 1")
    if args.module:
        cfg.module = load_json(args.module, "module")
    if args.witness:
        cfg.witness = load_json(args.witness, "witness")
    if args.window:
        try:
            parse_window(args.window, 1)
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError("window", str(exc))
        cfg.window = args.window
    report = run_suite(cfg)
    report["config"] = {"suite": cfg.suite, "algebra": cfg.algebra, "rank": cfg.rank, "seed": cfg.seed,
                        "module": cfg.module, "witness_descriptor": cfg.witness}
    _dump(report, cfg.out)
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toroidal", description="Exact computations with toroidal Lie algebra modules.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a module from a JSON descriptor and summarise it")
    b.add_argument("descriptor", help="path to a JSON descriptor, or inline JSON")
    b.add_argument("--out", type=Path)
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("apply", help="apply a generator to a vector")
    a.add_argument("--module", required=True)
    a.add_argument("--key", required=True, help="e.g. 'e(1,(1))', 'K0((3))', 'K1'")
    a.add_argument("--vector", required=True, help="basis label (as printed by build) or JSON map")
    a.add_argument("--out", type=Path)
    a.set_defaults(func=cmd_apply)

    v = sub.add_parser("verify", help="run a verification suite and write a JSON report")
    v.add_argument("--suite", required=True, choices=suites.SUITES)
    v.add_argument("--module", help="module descriptor (path or inline JSON)")
    v.add_argument("--witness", help="category witness descriptor (path or inline JSON)")
    v.add_argument("--window", help="exponent window lo..hi or JSON {\"x0\": [lo, hi], \"x\": [[lo, hi], ...]}")
    v.add_argument("--algebra", default="sl2")
    v.add_argument("--rank", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", type=Path)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    argv = _merge_window_args(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DescriptorError as exc:
        print(f"config error: {exc.field or 'descriptor'}: {exc}", file=sys.stderr)
        return 2
    except ToroidalError as exc:
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
