"""Run every verification suite with its defaults and print a one-line summary each."""
import argparse
import json
import time
from pathlib import Path

from toroidal import suites
from toroidal.cli import RunConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--outdir", type=Path, help="write one JSON report per suite here")
    args = ap.parse_args()
    if args.outdir:
        args.outdir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in suites.SUITES:
        t = time.perf_counter()
        rep = run_suite(RunConfig(suite=name, seed=args.seed))
        dt = time.perf_counter() - t
        n = sum(c["count"] for c in rep["checks"])
        print(f"{'ok  ' if rep['pass'] else 'FAIL'} {name:22s} {len(rep['checks']):3d} checks {n:8d} cases {dt:6.1f}s")
        failed += not rep["pass"]
        if args.outdir:
            (args.outdir / f"{name}.json").write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
