"""Solve the dispersionless string equations and print the solution with its checks."""

import argparse

from hurwitz_toda import dispersionless as dl


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--D", type=int, default=4, help="weighted degree cutoff")
    ap.add_argument("--case-i", action="store_true", help="only t1 and tbar1 switched on")
    args = ap.parse_args()
    sol = dl.solve_case_i(args.D) if args.case_i else dl.solve(args.D)
    print("ubar0 =", sol.ubar0)
    for n in sorted(sol.u):
        print(f"u_{n} =", sol.u[n])
    for n in sorted(sol.ubar):
        print(f"ubar_{n} =", sol.ubar[n])
    print("string equations vanish through degree", dl.verify_string_equations(sol))
    degs = [dl.vanishing_degree(r, args.D) for r in dl.canonical_relations(sol)]
    print("canonical brackets vanish through degree", degs)
    print("Lambert curve at t = 0:", dl.lambert_report(args.D))


if __name__ == "__main__":
    main()
