"""Graded dimensions of truncated induced modules against colored-partition counts."""
import argparse
from toroidal.modules import FiniteIrrep, InducedModule


def colored_partitions(upto, colors):
    """Coefficients of prod_k (1 - q^k)^(-colors) up to q^upto."""
    c = [1] + [0] * upto
    for k in range(1, upto + 1):
        for _ in range(colors):
            for n in range(k, upto + 1):
                c[n] += c[n - k]
    return c


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--m", type=int, default=0)
    args = ap.parse_args()
    U = FiniteIrrep(args.m)
    I = InducedModule(U, 1, args.depth)
    dims = I.graded_dims()
    expect = [U.dim * c for c in colored_partitions(args.depth, I.g.dimension)]
    print("degree  dim  expected")
    for k, (a, b) in enumerate(zip(dims, expect)):
        print(f"{k:6d} {a:4d} {b:9d} {'' if a == b else '  MISMATCH'}")


if __name__ == "__main__":
    main()
