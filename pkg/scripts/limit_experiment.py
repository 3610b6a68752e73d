"""How fast the d-regular radius approaches d as k grows (s fixed)."""
import argparse

from hyperspec import regular_radius


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-d", type=int, default=2)
    ap.add_argument("-s", type=int, default=1)
    ap.add_argument("--ks", type=int, nargs="+",
                    default=[4, 6, 10, 20, 40, 100, 200, 400, 1000, 10000])
    args = ap.parse_args()

    print("k,lambda,gap")
    for k in args.ks:
        if k < 2 * args.s + 1:
            continue
        lam = regular_radius(args.d, k, args.s)
        print(f"{k},{lam:.12g},{lam - args.d:.6g}")


if __name__ == "__main__":
    main()
