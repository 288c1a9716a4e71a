"""Run every invariant suite and print a timing per suite.

HURWITZ_TODA_THREADS is ignored here: suites run one after another so the timings are honest.
"""

import argparse
import time

from hurwitz_toda.verify import SUITES, VerifyConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmax", type=int, default=8)
    ap.add_argument("--D", type=int, default=5)
    ap.add_argument("--beta-order", type=int, default=5)
    args = ap.parse_args()
    cfg = VerifyConfig(dmax=args.dmax, D=args.D, beta_order=args.beta_order)
    cfg.check_limits()
    failed = 0
    for name, suite in SUITES.items():
        t0 = time.perf_counter()
        results = suite(cfg)
        dt = time.perf_counter() - t0
        for r in results:
            failed += not r.passed
            print(f"{'PASS' if r.passed else 'FAIL'}  {name:<15} {r.check}  [{r.range}]")
        print(f"      {name} took {dt:.2f}s")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
