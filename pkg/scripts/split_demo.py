"""Split the action on (induced, restricted) (x) (evaluation) into its two parts and print a few images."""
import argparse

from toroidal.categories import decompose_pi
from toroidal.lie import G
from toroidal.linear import Vec
from toroidal.suites import mixed_module, reference_split


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--root", default="f", choices=["e", "f", "h"])
    ap.add_argument("--n1", type=int, default=1)
    args = ap.parse_args()
    W = mixed_module(args.depth)
    wit = W.witness()
    print(f"module  {W.describe()}")
    print(f"witness {wit}")
    d = decompose_pi(W, wit)
    ref_R, ref_E = reference_split(W)
    a = W.g.index(args.root)
    lab = next(b for b in W.basis() if W.degree(b) == 1)
    w = Vec.basis(lab)
    print(f"vector  {W.label_str(lab)}")
    print(f"{'n0':>3}  {'pi_R':40s} {'pi_E':40s} match")
    for n0 in range(-3, 4):
        k = G(a, n0, (args.n1,))
        r, e = d.pi_R(k, w), d.pi_E(k, w)
        ok = r == ref_R(k, lab) and e == ref_E(k, lab) and r + e == W.apply(k, w)
        print(f"{n0:3d}  {str(W.vec_str(r)):40s} {str(W.vec_str(e)):40s} {ok}")


if __name__ == "__main__":
    main()
