"""Free energies F_n from the beta-flow tower, compared with the direct hbar oracle."""

import argparse

from hurwitz_toda import free_energy as fe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--D", type=int, default=4)
    ap.add_argument("--beta-order", type=int, default=4)
    args = ap.parse_args()
    tower = fe.solve_tower(args.n, args.D, args.beta_order)
    oracle, odd = fe.oracle_hbar_expansion(args.D, args.beta_order, args.n)
    for n, F in enumerate(tower.F):
        status = "matches oracle" if oracle[n] == F else "DIFFERS from oracle"
        print(f"F_{n} ({status}):\n  {F}")
    print("odd hbar exponents in log Z_resc:", odd or "none")


if __name__ == "__main__":
    main()
