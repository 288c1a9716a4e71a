"""Invariant suites behind ``verify-all`` and ``fock-verify``.

Each check returns a :class:`CheckResult`; a suite is a list of them.
"""

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import dispersionless as dl
from . import fock
from . import free_energy as fe
from .combinat import (Partition, character, class_data, dim_irrep, kappa, partitions_of,
                       partitions_up_to, transpose)
from .hurwitz import (RamificationProfile, ResourceError, Z_double, Z_simple, cauchy_kernel,
                      cut_and_join, exp_cut_and_join, hurwitz_bruteforce, hurwitz_burnside)
from .schur import schur, schur_frobenius, schur_principal
from .series import ParamScalar, TSeries, exp_series, substitute

LIMITS = {"d": 6, "dmax": 10, "D": 7, "beta_order": 8, "charge": 5, "n": 4}


@dataclass(frozen=True)
class VerifyConfig:
    d: int = 5
    dmax: int = 8
    D: int = 5
    beta_order: int = 5
    charges: tuple = tuple(range(-3, 4))
    n_free: int = 2
    faults: frozenset = field(default_factory=frozenset)

    def check_limits(self):
        for name in ("d", "dmax", "D", "beta_order"):
            value = getattr(self, name)
            if value < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
            if value > LIMITS[name]:
                raise ResourceError(f"{name}={value} exceeds the limit {LIMITS[name]}")
        if any(abs(s) > LIMITS["charge"] for s in self.charges):
            raise ResourceError(f"charges limited to |s| <= {LIMITS['charge']}")


@dataclass(frozen=True)
class CheckResult:
    module: str
    check: str
    range: str
    passed: bool
    detail: str = ""

    def as_dict(self):
        out = {"module": self.module, "check": self.check, "range": self.range,
               "status": "pass" if self.passed else "fail"}
        if self.detail:
            out["detail"] = self.detail
        return out


def _first_failures(items, limit=3):
    items = list(items)
    return "" if not items else "; ".join(str(x) for x in items[:limit])


# ---- combinat / schur ------------------------------------------------------

def combinat_checks(cfg):
    d = cfg.d
    kap = kappa
    if "kappa" in cfg.faults:
        def kap(lam):
            # test hook: one wrong sign
            return -kappa(lam) if lam == Partition((2,)) else kappa(lam)
    bad = [lam for lam in partitions_up_to(max(d, 2)) if kap(transpose(lam)) != -kap(lam)]
    out = [CheckResult("combinat", "kappa antisymmetry", f"|lam|<={max(d, 2)}", not bad,
                       _first_failures(bad))]
    bad = [n for n in range(1, d + 1)
           if sum(dim_irrep(lam) ** 2 for lam in partitions_of(n)) != factorial(n)]
    out.append(CheckResult("combinat", "sum dim^2 = d!", f"d<={d}", not bad, _first_failures(bad)))
    bad = []
    for n in range(1, d + 1):
        lams = partitions_of(n)
        for a, b in itertools.combinations_with_replacement(lams, 2):
            s = sum(Fraction(character(a, mu) * character(b, mu), class_data(mu).z)
                    for mu in lams)
            if s != (1 if a == b else 0):
                bad.append((a, b))
    out.append(CheckResult("combinat", "character orthogonality", f"d<={d}", not bad,
                           _first_failures(bad)))
    return out


def schur_checks(cfg):
    D = min(cfg.dmax, 8)
    out = []
    lams = partitions_up_to(min(D, 6))
    bad = [lam for lam in lams if schur(lam, "t", 6) != schur_frobenius(lam, "t", 6)]
    out.append(CheckResult("schur_gen", "Jacobi-Trudi = Frobenius", "|lam|<=6", not bad,
                           _first_failures(bad)))
    bad = [lam for lam in lams
           if schur(lam, "t", 6) != schur(transpose(lam), "t", 6, sign=-1) * (-1) ** lam.size]
    out.append(CheckResult("schur_gen", "transpose identity", "|lam|<=6", not bad,
                           _first_failures(bad)))
    lhs = TSeries.zero(D)
    for lam in partitions_up_to(D // 2):
        lhs = lhs + schur(lam, "t", D) * schur(lam, "tbar", D, sign=-1)
    out.append(CheckResult("schur_gen", "Cauchy identity", f"D={D}",
                           lhs == cauchy_kernel(D, None, with_Q=False)))
    c = ParamScalar.gen("c")
    bad = []
    for lam in lams:
        scaled = substitute(schur(lam, "t", 6),
                            {f"t{k}": TSeries.var(f"t{k}", 6) * c ** k for k in range(1, 7)})
        if scaled != schur(lam, "t", 6) * c ** lam.size:
            bad.append(lam)
    out.append(CheckResult("schur_gen", "weighted homogeneity", "|lam|<=6", not bad,
                           _first_failures(bad)))
    bad = [lam for lam in lams if substitute(
        schur(lam, "t", 6), {f"t{k}": (1 if k == 1 else 0) for k in range(1, 7)}
    ).constant() != schur_principal(lam)]
    out.append(CheckResult("schur_gen", "principal specialization", "|lam|<=6", not bad,
                           _first_failures(bad)))
    return out


# ---- hurwitz -------------------------------------------------------------

def burnside_mismatches(d_max, r_max):
    bad = []
    for d in range(1, d_max + 1):
        classes = partitions_of(d)
        for r in range(r_max + 1):
            for profiles in itertools.product(classes, repeat=r):
                rp = RamificationProfile(d, profiles)
                if hurwitz_burnside(rp) != hurwitz_bruteforce(rp):
                    bad.append((d, profiles))
    return bad


def hurwitz_checks(cfg):
    d = min(cfg.d, 5)
    bad = burnside_mismatches(d, 3)
    out = [CheckResult("hurwitz", "Burnside = brute force", f"d<={d}, r<=3", not bad,
                       _first_failures(bad))]
    D = min(cfg.dmax, 8)
    bad = [lam for lam in partitions_up_to(D)
           if cut_and_join(schur(lam, "t", D)) != schur(lam, "t", D) * Fraction(kappa(lam), 2)]
    out.append(CheckResult("hurwitz", "cut-and-join eigen-equation", f"|lam|<={D}, D={D}",
                           not bad, _first_failures(bad)))
    D, N = min(cfg.D, 6), min(cfg.beta_order, 6)
    e_qt1 = exp_series(TSeries.var("t1", D, N) * ParamScalar.gen("Q", 1, N))
    out.append(CheckResult("hurwitz", "Z_simple = e^{beta M0} e^{Q t1}", f"D={D}, N_beta={N}",
                           Z_simple(D, N) == exp_cut_and_join(e_qt1, N)))
    out.append(CheckResult("hurwitz", "Z_double = e^{beta M0} Cauchy kernel",
                           f"D={D}, N_beta={N}",
                           Z_double(D, N) == exp_cut_and_join(cauchy_kernel(D, N), N)))
    return out


# ---- fock ------------------------------------------------------------------

def fock_checks(cfg):
    dmax, N, out = cfg.dmax, cfg.beta_order, []
    bad = []
    for s in cfg.charges:
        L0 = fock.bilinear(fock.delta_power(1), dmax, s)
        W0 = fock.bilinear(fock.delta_power(2), dmax, s)
        J0 = fock.bilinear(fock.delta_power(0), dmax, s)
        M0 = fock.build_M0_fermionic(dmax, s)
        for op in (L0, W0, J0, M0):
            if not op.is_diagonal():
                bad.append(("offdiag", s))
        for lam in partitions_up_to(dmax):
            if (L0.diagonal(lam) != fock.L0_closed(lam, s)
                    or W0.diagonal(lam) != fock.W0_closed(lam, s)
                    or J0.diagonal(lam) != s
                    or M0.diagonal(lam) != fock.M0_closed(lam, s)):
                bad.append((lam, s))
    rng = f"|lam|<={dmax}, s in [{min(cfg.charges)},{max(cfg.charges)}]"
    out.append(CheckResult("fock", "L0/W0/J0/M0 diagonals", rng, not bad, _first_failures(bad)))

    bad = []
    for s in cfg.charges:
        bad += [(s,) + x for x in fock.anticommutation_failures(min(dmax, 6), s, range(-3, 4))]
    out.append(CheckResult("fock", "anti-commutation", "modes |n|<=3", not bad,
                           _first_failures(bad)))

    op, gam = fock.commutator_with_cocycle(fock.shift(1), fock.shift(-1), min(dmax, 6), 0)
    ident = fock.identity_op(min(dmax, 6), 0)
    out.append(CheckResult("fock", "[J1, J-1] = gamma Id, gamma = 1", f"d_max={min(dmax, 6)}",
                           gam == 1 and not op.mismatches(ident.scaled(gam))))
    out.append(CheckResult("fock", "gamma(Delta, Delta) = 0", "",
                           fock.cocycle(fock.delta_power(1), fock.delta_power(1)).is_zero()))

    dm, Na = min(dmax, 6), min(N, 4)
    bad = []
    for s in (c for c in cfg.charges if abs(c) <= 2):
        for m in (1, 2, 3, -1, -2, -3):
            q_bad, w_bad = fock.adjoint_mismatches(m, dm, s, Na)
            if q_bad or w_bad:
                bad.append((m, s))
    out.append(CheckResult("fock", "adjoint actions on J_m", f"|m|<=3, d_max={dm}", not bad,
                           _first_failures(bad)))

    bad = []
    for s in cfg.charges:
        for k in (1, 2, 3):
            first, second = fock.intertwiner_mismatches(k, dmax, s, N)
            if first or second:
                bad.append((k, s))
    out.append(CheckResult("fock", "intertwining relations", f"k<=3, d_max={dmax}, N_beta={N}",
                           not bad, _first_failures(bad)))

    D = min(cfg.D, 5)
    bad = []
    for s in cfg.charges:
        vec = fock.exp_current_state(s, D)
        for lam in partitions_up_to(D):
            if vec.get(lam, TSeries.zero(D)) != schur(lam, "t", D):
                bad.append((lam, s))
    out.append(CheckResult("fock", "<lam,s|e^J|s> = schur", f"|lam|<={D}", not bad,
                           _first_failures(bad)))

    Nt = min(N, 4)
    bad = [s for s in cfg.charges if abs(s) <= 2 and tau_mismatch(s, D, Nt)]
    out.append(CheckResult("fock", "tau_s = prefactor * Z_double(Q -> e^{beta(s+1/2)}Q)",
                           f"|s|<=2, D={D}, N_beta={Nt}", not bad, _first_failures(bad)))
    return out


def tau_mismatch(s, D, nbeta):
    return fock.tau_expand(s, D, nbeta) != fock.tau_closed_form(s, D, nbeta)


# ---- dispersionless ----------------------------------------------------------

def dispersionless_checks(cfg):
    D, out = cfg.D, []
    sol = dl.solve(D)
    rep = dl.verify_string_equations(sol)
    out.append(CheckResult("dispersionless", "string equations", f"D={D}",
                           rep["first"] >= D and rep["second"] >= D, str(rep)))
    degs = [dl.vanishing_degree(r, D) for r in dl.canonical_relations(sol)]
    out.append(CheckResult("dispersionless", "{L,M}=L, {Lbar,Mbar}=Lbar, {log L, log Lbar^-1}=beta",
                           f"D={D}", all(g >= D for g in degs), str(degs)))
    degs = [dl.vanishing_degree(r, D) for k in (2, 3) for r in dl.string_residuals(sol, k)]
    out.append(CheckResult("dispersionless", "power identity", f"k<=3, D={D}",
                           all(g >= D for g in degs), str(degs)))
    out.append(CheckResult("dispersionless", "lemma sums", f"D={D}",
                           all(x.is_zero() for x in dl.lemma_sums(sol))))
    out.append(CheckResult("dispersionless", "Lax t1 flow", f"through degree {D - 1}",
                           dl.lax_t1_residual(sol).is_zero()))
    bad = dl.homogeneity_mismatches(D)
    out.append(CheckResult("dispersionless", "scaling homogeneity", f"D={D}", not bad,
                           _first_failures(bad)))
    ci, gen = dl.solve_case_i(D), dl.solve(D, dl.case_i_times(D))
    same = all(getattr(ci, f) == getattr(gen, f)
               for f in ("ubar0", "u", "ubar", "v", "vbar", "alpha", "alphabar"))
    out.append(CheckResult("dispersionless", "case (i) = general solver restricted", f"D={D}",
                           same))
    lam = dl.lambert_report(D)
    out.append(CheckResult("dispersionless", "Lambert x = y e^y", f"through p^-{D}",
                           lam["exact"] and lam["ubar0_is_B"] and dl.case_i_lax_identity(D)))
    return out


# ---- free energy -------------------------------------------------------------

def free_energy_checks(cfg):
    D, N, n = min(cfg.D, 6), min(cfg.beta_order, 5), cfg.n_free
    tower = fe.solve_tower(n, D, N)
    rng = f"n<={n}, D={D}, N_beta={N}"
    out = [CheckResult("free_energy", "F_n PDE residual", rng,
                       all(fe.pde_residual(tower, k).is_zero() for k in range(n + 1)))]
    oracle, odd = fe.oracle_hbar_expansion(D, N, n)
    bad = [k for k in range(n + 1) if oracle[k] != tower.F[k]]
    out.append(CheckResult("free_energy", "tower = hbar oracle", rng, not bad,
                           _first_failures(bad)))
    out.append(CheckResult("free_energy", "odd hbar powers vanish", rng, not odd,
                           _first_failures(odd)))
    out.append(CheckResult("free_energy", "oracle at hbar=1 = log Z_double", f"D={D}, N_beta={N}",
                           fe.oracle_at_hbar_one(D, N) == fe.log_Z_double(D, N)))
    return out


SUITES = {
    "combinat": combinat_checks,
    "schur_gen": schur_checks,
    "hurwitz": hurwitz_checks,
    "fock": fock_checks,
    "dispersionless": dispersionless_checks,
    "free_energy": free_energy_checks,
}


def _run_suite(args):
    name, cfg = args
    return SUITES[name](cfg)


def threads():
    raw = os.environ.get("HURWITZ_TODA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"HURWITZ_TODA_THREADS must be an integer, got {raw!r}")


def run_all(cfg, names=None):
    """Run the named suites (default: all); results come back in suite order."""
    cfg.check_limits()
    names = list(names or SUITES)
    n = min(threads(), len(names))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            chunks = list(pool.map(_run_suite, [(name, cfg) for name in names]))
    else:
        chunks = [_run_suite((name, cfg)) for name in names]
    return [r for chunk in chunks for r in chunk]
