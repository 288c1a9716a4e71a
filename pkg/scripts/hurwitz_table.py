"""Table of simple Hurwitz numbers, character formula against generating-function extraction."""

import argparse

from hurwitz_toda.combinat import partitions_of
from hurwitz_toda.hurwitz import Z_simple, simple_from_genfun, simple_hurwitz


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=4, help="max degree")
    ap.add_argument("--r", type=int, default=4, help="max number of simple branch points")
    args = ap.parse_args()
    Z = Z_simple(args.d, args.r + 1)
    print(f"{'d':>2} {'r':>2} {'mu':<12} {'H':>10}  genfun")
    for d in range(1, args.d + 1):
        for r in range(args.r + 1):
            for mu in partitions_of(d):
                h = simple_hurwitz(d, r, mu)
                ok = "ok" if simple_from_genfun(Z, d, r, mu) == h else "MISMATCH"
                print(f"{d:>2} {r:>2} {str(mu):<12} {str(h):>10}  {ok}")


if __name__ == "__main__":
    main()
