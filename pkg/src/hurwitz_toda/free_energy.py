"""hbar-expansion of log Z_double: recursive F_n and a direct oracle."""

from dataclasses import dataclass
from fractions import Fraction

from .combinat import partitions_up_to, kappa
from .hurwitz import Z_double
from .schur import schur
from .series import ParamScalar, TSeries, log_unit, substitute


@dataclass
class FreeEnergyTower:
    n_max: int
    D: int
    nbeta: int
    F: list


def initial_F0(D, nbeta):
    """-sum_k Q^k k t_k tbar_k."""
    out = TSeries.zero(D, nbeta)
    for k in range(1, D // 2 + 1):
        out = out - TSeries.var(f"t{k}", D, nbeta) * TSeries.var(f"tbar{k}", D, nbeta) \
            * ParamScalar.gen("Q", k, nbeta) * k
    return out


def pde_rhs(F, n):
    """Right-hand side of the beta-flow for F_n given the list F (F_{-1} = 0)."""
    f = F[n]
    D, nbeta = f.D, f.nbeta
    t = {k: TSeries.var(f"t{k}", D, nbeta) for k in range(1, D + 1)}
    d1 = [{k: Fm.derive(f"t{k}") for k in range(1, D)} for Fm in F[:n + 1]]
    out = TSeries.zero(D, nbeta)
    for k in range(1, D):
        for l in range(1, D - k + 1):
            kl = k + l
            out = out + t[k] * t[l] * f.derive(f"t{kl}") * Fraction(k * l, 2)
            inner = TSeries.zero(D, nbeta)
            if n >= 1:
                inner = inner + d1[n - 1][k].derive(f"t{l}")
            for m in range(n + 1):
                inner = inner + d1[m][k] * d1[n - m][l]
            out = out + t[kl] * inner * Fraction(kl, 2)
    return out


def solve_tower(n_max, D, nbeta):
    """Integrate the F_n flows in beta order by order from the beta = 0 data."""
    if nbeta is None:
        raise ValueError("the tower needs a beta truncation order")
    F = [initial_F0(D, nbeta)] + [TSeries.zero(D, nbeta) for _ in range(n_max)]
    beta = ParamScalar.gen("beta", 1, nbeta)
    for j in range(nbeta - 1):
        new = []
        for n in range(n_max + 1):
            rhs = pde_rhs(F, n).beta_coeff(j)
            new.append(F[n] + rhs * beta ** (j + 1) * Fraction(1, j + 1))
        F = new
    return FreeEnergyTower(n_max, D, nbeta, F)


def pde_residual(tower, n):
    """dF_n/dbeta minus the flow; zero through beta-order nbeta - 2."""
    F = tower.F
    lhs = TSeries.zero(tower.D, tower.nbeta)
    for j in range(1, tower.nbeta):
        lhs = lhs + F[n].beta_coeff(j) * ParamScalar.gen("beta", j - 1, tower.nbeta) * j
    rhs = pde_rhs(F, n)
    return (lhs - rhs).map_params(
        lambda c: {k: v for k, v in c.items() if k[0] < tower.nbeta - 1})


def _exp_hbar_beta(x, nbeta):
    """exp(hbar beta x) with matching beta and hbar exponents."""
    terms, term = {}, Fraction(1)
    for j in range(nbeta):
        if j:
            term = term * x / j
        if term:
            terms[(j, 0, 0, 0, 0, j)] = term
    return ParamScalar(terms, nbeta)


def hbar_rescale(f):
    """beta -> hbar beta, t_k -> t_k / hbar, tbar_k -> tbar_k / hbar (unweighted).

    A monomial with beta^j and e variable factors picks up hbar^(j - e).
    """
    out = {}
    for m, c in f.terms.items():
        e = sum(m)
        out[m] = {k[:5] + (k[5] + k[0] - e,): v for k, v in c.items()}
    return TSeries(f.D, out, f.nbeta)


def log_Z_resc(D, nbeta):
    """log Z_{hbar beta, Q}[t / hbar, tbar / hbar], hbar an exact Laurent generator.

    No hbar window is imposed: the beta truncation already bounds its exponents.
    """
    Z = TSeries.zero(D, nbeta)
    for lam in partitions_up_to(D // 2):
        w = _exp_hbar_beta(Fraction(kappa(lam), 2), nbeta) \
            * ParamScalar.gen("Q", lam.size, nbeta)
        pair = schur(lam, "t", D, nbeta) * schur(lam, "tbar", D, nbeta, sign=-1)
        Z = Z + hbar_rescale(pair) * w
    c, logz = log_unit(Z)
    if c != 1:
        raise ArithmeticError("Z_resc should start with 1")
    return logz


def hbar_coefficient(f, e):
    return f.map_params(lambda c: {k[:5] + (0,): v for k, v in c.items() if k[5] == e})


def hbar_exponents(f):
    return sorted({k[5] for c in f.terms.values() for k in c})


def oracle_hbar_expansion(D, nbeta, n_max):
    """{n: coefficient of hbar^{2n-2} in log Z_resc} plus the list of odd exponents seen."""
    logz = log_Z_resc(D, nbeta)
    odd = [e for e in hbar_exponents(logz) if e % 2]
    return {n: hbar_coefficient(logz, 2 * n - 2) for n in range(n_max + 1)}, odd


def oracle_at_hbar_one(D, nbeta):
    """log Z_resc with hbar set to 1, to compare with log Z_double."""
    return log_Z_resc(D, nbeta).map_params(_drop_hbar)


def _drop_hbar(c):
    out = {}
    for k, v in c.items():
        key = k[:5] + (0,)
        out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


def log_Z_double(D, nbeta):
    c, logz = log_unit(Z_double(D, nbeta))
    return logz


@dataclass
class FullFreeEnergy:
    """series = beta s^3/6 + F0 with Q -> B; the s^2 log Q / 2 term is tagged separately."""
    series: TSeries
    log_q_coefficient: ParamScalar

    def report(self):
        return {"series": self.series, "logQ": self.log_q_coefficient}


def _q_to_b(c):
    out = {}
    for k, v in c.items():
        key = (k[0], k[1], 0, k[3] + k[2], k[4], k[5])
        out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


def assemble_full_free_energy(tower):
    D, nbeta = tower.D, tower.nbeta
    head = ParamScalar({(1, 3, 0, 0, 0, 0): Fraction(1, 6)}, nbeta)
    series = tower.F[0].map_params(_q_to_b) + TSeries.const(head, D, nbeta)
    return FullFreeEnergy(series, ParamScalar({(0, 2, 0, 0, 0, 0): Fraction(1, 2)}, nbeta))


def simple_specialization(tower):
    """tbar_k = -delta_{k1}.  Exact only through t-degree D // 2 (deg_t = deg_tbar termwise)."""
    assign = {f"tbar{k}": (-1 if k == 1 else 0) for k in range(1, tower.D + 1)}
    return [substitute(f, assign) for f in tower.F]


def orlov_vs_free_energy(D, nbeta):
    """Compare v_n from the string solver with dF0/dt_n (Q -> B), both truncated.

    Returned as a report; the identification is not part of the verified claims.
    """
    from .dispersionless import solve
    sol = solve(D)
    F0 = solve_tower(0, D, nbeta).F[0].map_params(_q_to_b)
    out = {}
    for n in range(1, D + 1):
        v = sol.v[n].with_nbeta(nbeta).truncate(D - n)
        vb = sol.vbar[n].with_nbeta(nbeta).truncate(D - n)
        out[n] = {"v_n == dF0/dt_n": v == F0.derive(f"t{n}").truncate(D - n),
                  "vbar_n == -dF0/dtbar_n": vb == -F0.derive(f"tbar{n}").truncate(D - n)}
    return out
