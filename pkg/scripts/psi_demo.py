"""Finite-sum projection weights for a few annihilators, and the projection of an evaluation series."""
import argparse
from fractions import Fraction

from toroidal.exact import LaurentPoly
from toroidal.formal import ExponentWindow, action_series, decompose_series, psi_weights
from toroidal.linear import Vec
from toroidal.suites import mixed_module


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--floor", type=int, default=2, help="x0 truncation floor of the series")
    args = ap.parse_args()
    x = LaurentPoly.x()
    for q in (x - 3, LaurentPoly.from_roots([2, Fraction(1, 2)]), x ** 2 + 1):
        print(f"q = {q}")
        for n0 in range(args.floor - 3, args.floor + 2):
            print(f"  n0={n0:3d}  beta = {[str(b) for b in psi_weights(q, args.floor, n0)]}")
    W = mixed_module()
    w = Vec.basis(W.basis()[0])
    alpha = action_series(W, W.g.index("f"), w)
    tilde, check = decompose_series(alpha, W.witness().p0)
    window = ExponentWindow.from_modes((-2, 2), [(0, 0)])
    for n0, n in window.modes():
        print(f"f({n0},{n}) vac: full {W.vec_str(alpha.coeff(n0, n))}  restricted {W.vec_str(tilde.coeff(n0, n))}"
              f"  evaluation {W.vec_str(check.coeff(n0, n))}")


if __name__ == "__main__":
    main()
