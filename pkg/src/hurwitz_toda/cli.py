"""Command-line entry point.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource bound.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import dispersionless as dl
from . import free_energy as fe
from .combinat import Partition
from .hurwitz import (RamificationProfile, ResourceError, Z_double, Z_simple, cauchy_kernel,
                      hurwitz_bruteforce, hurwitz_burnside)
from .schur import schur
from .series import ParamScalar, TSeries, laurent_to_json, series_to_json
from .verify import LIMITS, VerifyConfig, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    d: int = 5
    dmax: int = 8
    D: int = 5
    beta_order: int = 5
    charges: tuple = tuple(range(-3, 4))
    profiles: tuple = ()
    fmt: str = "text"
    seed: int = 0
    flags: frozenset = field(default_factory=frozenset)
    extra: tuple = ()

    def has(self, flag):
        return flag in self.flags


def parse_profiles(text, d):
    """``"[2];[2]"`` -> tuple of partitions, each of size d."""
    if text is None or not text.strip():
        return ()
    try:
        profiles = tuple(Partition.parse(chunk) for chunk in text.split(";"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for p in profiles:
        if p.size != d:
            raise UsageError(f"profile {p} has size {p.size}, expected {d}")
    return profiles


def parse_charges(text):
    """``"-3..3"``, ``"0,2"`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise UsageError(f"empty charge range {text!r}")
            return tuple(range(lo, hi + 1))
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed charge range {text!r}") from None


def _frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _series_rows(f):
    rows = []
    for term in series_to_json(f)["terms"]:
        for c in term["coeff"]:
            params = " ".join(f"{k[2:]}^{v}" for k, v in c.items()
                              if k.startswith("e_") and v)
            rows.append({"t": term["t"], "tbar": term["tbar"], "params": params,
                         "value": c["value"]})
    return rows


def _emit(cfg, payload, table=None, text=None):
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2)
    if cfg.fmt == "csv" and table is not None:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(table[0]) if table else ["empty"],
                                lineterminator="\n")
        writer.writeheader()
        for row in table:
            writer.writerow({k: json.dumps(v) if isinstance(v, list) else v
                             for k, v in row.items()})
        return buf.getvalue().rstrip("\n")
    return text if text is not None else json.dumps(payload, indent=2)


# ---- commands ------------------------------------------------------------

def cmd_hurwitz(cfg):
    if cfg.d < 1:
        raise UsageError("--d must be positive")
    rp = RamificationProfile(cfg.d, cfg.profiles)
    value = hurwitz_burnside(rp)
    row = {"d": cfg.d, "profiles": ";".join(str(p) for p in cfg.profiles),
           "burnside": _frac(value)}
    ok = True
    if cfg.has("oracle"):
        brute = hurwitz_bruteforce(rp)
        row["bruteforce"] = _frac(brute)
        ok = brute == value
    text = _frac(value) + ("" if ok else f"  (brute force: {row['bruteforce']})")
    return _emit(cfg, row, [row], text), ok


def cmd_genfun(cfg):
    N = cfg.beta_order
    if cfg.has("double"):
        Z = Z_double(cfg.D, N)
        beta0 = Z.beta_coeff(0) == cauchy_kernel(cfg.D, N)
        report = {"beta0_is_cauchy_kernel": beta0}
    else:
        Z = Z_simple(cfg.D, N)
        q_t1 = TSeries.var("t1", cfg.D, N) * ParamScalar.gen("Q", 1, N)
        beta0 = Z.beta_coeff(0) == q_t1.exp()
        report = {"beta0_is_exp_Q_t1": beta0}
    payload = {"series": series_to_json(Z), "report": report}
    return _emit(cfg, payload, _series_rows(Z), repr(Z)), beta0


def cmd_schur(cfg):
    (lam,) = cfg.extra
    f = schur(lam, "t", cfg.D)
    return _emit(cfg, {"lambda": str(lam), "series": series_to_json(f)}, _series_rows(f),
                 repr(f)), True


def _report_out(cfg, results):
    rows = [r.as_dict() for r in results]
    ok = all(r.passed for r in results)
    text = "\n".join(f"{r['status'].upper():4}  {r['module']}: {r['check']}  [{r['range']}]"
                     + (f"  {r['detail']}" if r.get("detail") else "") for r in rows)
    return _emit(cfg, {"status": "pass" if ok else "fail", "checks": rows}, rows, text), ok


def _verify_config(cfg, faults=frozenset()):
    return VerifyConfig(d=cfg.d, dmax=cfg.dmax, D=cfg.D, beta_order=cfg.beta_order,
                        charges=cfg.charges, faults=faults)


def cmd_fock_verify(cfg):
    return _report_out(cfg, run_all(_verify_config(cfg), ["fock"]))


def cmd_verify_all(cfg):
    faults = frozenset(x for x in cfg.extra if x)
    return _report_out(cfg, run_all(_verify_config(cfg, faults)))


def _solution_json(sol):
    def dump(m):
        return {str(n): series_to_json(v) for n, v in sorted(m.items())}
    return {"D": sol.D, "ubar0": series_to_json(sol.ubar0), "u": dump(sol.u),
            "ubar": dump(sol.ubar), "v": dump(sol.v), "vbar": dump(sol.vbar),
            "alpha": dump(sol.alpha), "alphabar": dump(sol.alphabar)}


def cmd_string_solve(cfg):
    D = cfg.D
    if D > LIMITS["D"]:
        raise ResourceError(f"D={D} exceeds the limit {LIMITS['D']}")
    if cfg.has("lambert"):
        rep = dl.lambert_report(D)
        ok = rep["exact"] and rep["ubar0_is_B"]
        payload = {"lambert": f"exact through p^-{D}" if ok else "mismatch",
                   "ubar0_is_B": rep["ubar0_is_B"],
                   "orders": {str(n): v for n, v in sorted(rep["orders"].items())}}
        return _emit(cfg, payload, None,
                     f"Lambert identity x = y e^y: {payload['lambert']}"), ok
    if cfg.has("case_i"):
        sol = dl.solve_case_i(D, t_zero=cfg.has("t_zero"))
    elif cfg.has("t_zero"):
        sol = dl.solve(D, {**dl.default_times(D),
                           **{f"t{k}": TSeries.zero(D) for k in range(1, D + 1)}})
    else:
        sol = dl.solve(D)
    rep = dl.verify_string_equations(sol)
    ok = rep["first"] >= D and rep["second"] >= D
    payload = {"solution": _solution_json(sol),
               "L": laurent_to_json(dl.build_L(sol)),
               "Lbar_inv": laurent_to_json(dl.build_Lbar_inv(sol)),
               "verification": {"first_residual_zero_through": rep["first"],
                                "second_residual_zero_through": rep["second"]}}
    text = "\n".join([f"ubar0 = {sol.ubar0!r}"]
                     + [f"u_{n} = {sol.u[n]!r}" for n in sorted(sol.u)]
                     + [f"ubar_{n} = {sol.ubar[n]!r}" for n in sorted(sol.ubar)]
                     + [f"residuals vanish through degree {rep['first']}, {rep['second']}"])
    return _emit(cfg, payload, None, text), ok


def cmd_free_energy(cfg):
    n = cfg.extra[0]
    tower = fe.solve_tower(n, cfg.D, cfg.beta_order)
    residual_zero = [fe.pde_residual(tower, k).is_zero() for k in range(n + 1)]
    F = fe.simple_specialization(tower) if cfg.has("simple") else tower.F
    payload = {"n_max": n, "D": cfg.D, "N_beta": cfg.beta_order,
               "simple": cfg.has("simple"),
               "F": {str(k): series_to_json(f) for k, f in enumerate(F)},
               "pde_residual": {str(k): "0" if z else "nonzero"
                                for k, z in enumerate(residual_zero)}}
    text = "\n".join(f"F_{k} = {f!r}" for k, f in enumerate(F)) + "\n" + \
        "PDE residual: " + ", ".join(payload["pde_residual"].values())
    return _emit(cfg, payload, None, text), all(residual_zero)


COMMANDS = {
    "hurwitz": cmd_hurwitz,
    "genfun": cmd_genfun,
    "schur": cmd_schur,
    "fock-verify": cmd_fock_verify,
    "string-solve": cmd_string_solve,
    "free-energy": cmd_free_energy,
    "verify-all": cmd_verify_all,
}


# ---- argument parsing ------------------------------------------------------

def _common(p, *names):
    if "d" in names:
        p.add_argument("--d", type=int, default=5)
    if "dmax" in names:
        p.add_argument("--dmax", type=int, default=8)
    if "D" in names:
        p.add_argument("--D", type=int, default=5)
    if "beta" in names:
        p.add_argument("--beta-order", type=int, default=5)
    if "charge" in names:
        p.add_argument("--charges", "--charge", default="-3..3")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.add_argument("--seed", type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(prog="hurwitz-toda",
                                     description="Hurwitz numbers and the 2D Toda hierarchy")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hurwitz", help="Hurwitz number from the character formula")
    _common(p, "d")
    p.add_argument("--profiles", default=None, help='e.g. "[2];[2]"')
    p.add_argument("--oracle", action="store_true", help="add the brute-force column")

    p = sub.add_parser("genfun", help="Z_simple or Z_double as a series dump")
    _common(p, "D", "beta")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--double", action="store_true")
    g.add_argument("--simple", action="store_true")

    p = sub.add_parser("schur", help="Schur function in t")
    _common(p, "D")
    p.add_argument("--lambda", dest="lam", required=True, help='e.g. "[2,1]"')

    p = sub.add_parser("fock-verify", help="Fock-space invariant suite")
    _common(p, "dmax", "D", "beta", "charge")

    p = sub.add_parser("string-solve", help="dispersionless string equations")
    _common(p, "D")
    p.add_argument("--case-i", action="store_true")
    p.add_argument("--t-zero", action="store_true")
    p.add_argument("--lambert", action="store_true")

    p = sub.add_parser("free-energy", help="hbar-expansion tower F_0..F_n")
    _common(p, "D", "beta")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--simple", action="store_true")

    p = sub.add_parser("verify-all", help="every invariant suite")
    _common(p, "d", "dmax", "D", "beta", "charge")
    p.add_argument("--inject-fault", choices=("kappa",), default=None,
                   help=argparse.SUPPRESS)
    return parser


def config_from_args(args):
    fmt = "json" if args.json else (args.format or "text")
    flags = {name for name in ("oracle", "double", "simple", "case_i", "t_zero", "lambert")
             if getattr(args, name, False)}
    kw = {}
    for name in ("d", "dmax", "D", "beta_order"):
        if hasattr(args, name):
            value = getattr(args, name)
            if value < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
            if name != "d" and value > LIMITS[name]:
                raise ResourceError(f"{name}={value} exceeds the limit {LIMITS[name]}")
            kw[name] = value
    if hasattr(args, "charges"):
        kw["charges"] = parse_charges(args.charges)
    if args.command == "hurwitz":
        kw["profiles"] = parse_profiles(args.profiles, args.d)
    extra = ()
    if args.command == "schur":
        try:
            extra = (Partition.parse(args.lam),)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if extra[0].size > args.D:
            raise UsageError(f"|lambda| = {extra[0].size} exceeds --D {args.D}")
    elif args.command == "free-energy":
        if args.n < 0:
            raise UsageError("--n must be non-negative")
        if args.n > LIMITS["n"]:
            raise ResourceError(f"n={args.n} exceeds the limit {LIMITS['n']}")
        extra = (args.n,)
    elif args.command == "verify-all":
        extra = (args.inject_fault,)
    return RunConfig(command=args.command, fmt=fmt, seed=args.seed, flags=frozenset(flags),
                     extra=extra, **kw)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = config_from_args(args)
        out, ok = COMMANDS[cfg.command](cfg)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
