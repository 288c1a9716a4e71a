"""Dispersionless string equations solved as truncated series.

Unknowns are kept in exponential form: ``L = p exp(A)`` with
``A = sum alpha_n p^-n`` and ``Lbar^-1 = ubar0 p^-1 exp(Abar)`` with
``Abar = sum alphabar_n p^n``.  ``ubar0`` is ``B`` times a unit, so log Q
and beta*s never appear outside the parameter B.

All series here use exact (polynomial) beta.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .series import ParamScalar, PLaurent, TSeries, exp_series, log_laurent


def default_times(D):
    """Free times: t_k and tbar_k are the formal variables themselves."""
    out = {}
    for k in range(1, D + 1):
        out[f"t{k}"] = TSeries.var(f"t{k}", D)
        out[f"tbar{k}"] = TSeries.var(f"tbar{k}", D)
    return out


def case_i_times(D, t_zero=False):
    """tbar_k = 0 for k > 1; optionally t = 0 too."""
    out = default_times(D)
    for k in range(1, D + 1):
        if k > 1:
            out[f"tbar{k}"] = TSeries.zero(D)
        if t_zero:
            out[f"t{k}"] = TSeries.zero(D)
    return out


def scaled_times(D, name="c"):
    """t_k -> c^-k t_k, tbar_k -> c^k tbar_k with a fresh parameter c."""
    out = default_times(D)
    for k in range(1, D + 1):
        out[f"t{k}"] = out[f"t{k}"] * ParamScalar.gen(name, -k)
        out[f"tbar{k}"] = out[f"tbar{k}"] * ParamScalar.gen(name, k)
    return out


@dataclass
class StringSolution:
    D: int
    ubar0: TSeries
    u: dict
    ubar: dict
    v: dict
    vbar: dict
    alpha: dict
    alphabar: dict
    times: dict = field(repr=False, default=None)


def _beta():
    return ParamScalar.gen("beta")


def _div_beta(f):
    """Exact division by beta; raises if some coefficient lacks a beta factor."""
    def shift(pd):
        if any(k[0] < 1 for k in pd):
            raise ArithmeticError("coefficient not divisible by beta")
        return {(k[0] - 1,) + k[1:]: v for k, v in pd.items()}
    return f.map_params(shift)


def _series_A(D, alpha):
    return PLaurent(D, {-n: a for n, a in alpha.items()})


def _series_Abar(D, alphabar):
    return PLaurent(D, {n: a for n, a in alphabar.items()})


def _lax_from_exponents(D, ubar0, alpha, alphabar):
    L = PLaurent(D, {1: 1}) * _series_A(D, alpha).exp()
    Lbar_inv = PLaurent(D, {-1: ubar0}) * _series_Abar(D, alphabar).exp()
    return L, Lbar_inv


def _step(D, times, ubar0, alpha, alphabar, g):
    """One pass; the outputs are correct through degree g if inputs are through g - 1."""
    beta = _beta()
    EA = {k: (_series_A(D, alpha) * k).exp() for k in range(1, D + 1)}
    EAbar = {k: (_series_Abar(D, alphabar) * k).exp() for k in range(1, D + 1)}
    new_alpha, new_alphabar = {}, {}
    for n in range(1, D + 1):
        a = TSeries.zero(D)
        b = TSeries.zero(D)
        for k in range(n, D + 1):
            # (Lbar^-k)_{-n} = ubar0^k [p^{k-n}] exp(k Abar);  (L^k)_n = [p^{n-k}] exp(k A)
            a = a + times[f"tbar{k}"] * (ubar0 ** k) * EAbar[k].coeff(k - n) * k
            b = b + times[f"t{k}"] * EA[k].coeff(n - k) * k
        new_alpha[n] = (a * (-beta)).truncate(g)
        new_alphabar[n] = (b * beta).truncate(g)
    corr = TSeries.zero(D)
    for k in range(1, D + 1):
        corr = corr + new_alpha[k] * new_alphabar[k] * k
    new_ubar0 = (exp_series(corr) * ParamScalar.gen("B")).truncate(g)
    return new_ubar0, new_alpha, new_alphabar


def _assemble(D, times, ubar0, alpha, alphabar):
    L, Lbar_inv = _lax_from_exponents(D, ubar0, alpha, alphabar)
    u = {n: L.coeff(1 - n) for n in range(1, D + 1)}
    ubar = {n: Lbar_inv.coeff(n - 1) for n in range(1, D + 1)}
    sol = StringSolution(D, ubar0, u, ubar, {}, {}, dict(alpha), dict(alphabar), times)
    sol.v, sol.vbar = orlov_coefficients(sol)
    return sol


def solve(D, times=None):
    """Solve the dispersionless string equations through weighted degree D."""
    if D < 1:
        raise ValueError("D must be at least 1")
    times = times if times is not None else default_times(D)
    ubar0 = TSeries.param("B", D)
    alpha = {n: TSeries.zero(D) for n in range(1, D + 1)}
    alphabar = {n: TSeries.zero(D) for n in range(1, D + 1)}
    for g in range(1, D + 1):
        ubar0, alpha, alphabar = _step(D, times, ubar0, alpha, alphabar, g)
    return _assemble(D, times, ubar0, alpha, alphabar)


def solve_case_i(D, t_zero=False):
    """Closed-form route when only tbar_1 survives among the tbar's."""
    times = case_i_times(D, t_zero)
    beta = _beta()
    tb1 = times["tbar1"]
    B = TSeries.param("B", D)
    ubar0 = B
    for _ in range(D):
        base = tb1 * ubar0 * (-beta)
        corr = TSeries.zero(D)
        for k in range(1, D + 1):
            corr = corr + times[f"t{k}"] * (base * k) ** k * Fraction(k, _fact(k))
        ubar0 = exp_series(corr * beta) * ParamScalar.gen("B")
    alpha = {n: TSeries.zero(D) for n in range(1, D + 1)}
    alpha[1] = tb1 * ubar0 * (-beta)
    alphabar = {}
    for n in range(1, D + 1):
        acc = TSeries.zero(D)
        for k in range(n, D + 1):
            acc = acc + times[f"t{k}"] * (alpha[1] * k) ** (k - n) * Fraction(k, _fact(k - n))
        alphabar[n] = acc * beta
    return _assemble(D, times, ubar0, alpha, alphabar)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---- Lax / Orlov builders ----------------------------------------------------

def build_L(sol):
    return PLaurent(sol.D, {1: 1}) + PLaurent(sol.D, {1 - n: c for n, c in sol.u.items()})


def build_Lbar_inv(sol):
    return PLaurent(sol.D, {-1: sol.ubar0}) + PLaurent(sol.D, {n - 1: c for n, c in sol.ubar.items()})


def _x_series(sol):
    """X = beta M - beta s - sum k alpha_k alphabar_k = A + Abar."""
    return _series_A(sol.D, sol.alpha) + _series_Abar(sol.D, sol.alphabar)


def orlov_coefficients(sol, variant="full"):
    """v_n, vbar_n from residues of X against dlog L / dlog Lbar.

    ``variant="log-only"`` keeps only log(L p^-1) for v and log(Lbar^-1 p)
    for vbar, the shortcut that drops the other half of X.
    """
    D = sol.D
    L, Lbar_inv = build_L(sol), build_Lbar_inv(sol)
    if variant == "full":
        Xv = Xvb = _x_series(sol)
    elif variant == "log-only":
        Xv = _series_A(D, sol.alpha)
        _, _, Xvb = log_laurent(Lbar_inv * PLaurent(D, {1: 1}), 0)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    dL, dLb = L.derive_p(), Lbar_inv.derive_p()
    v, vbar = {}, {}
    for n in range(1, D + 1):
        v[n] = _div_beta((Xv * L ** (n - 1) * dL).residue())
        vbar[n] = _div_beta((Xvb * Lbar_inv ** (n - 1) * dLb).residue() * -1)
    return v, vbar


def _M_tail(sol):
    """M - s as a Laurent series."""
    D, L = sol.D, build_L(sol)
    out = PLaurent(D, {})
    Linv = L.inverse()
    for n in range(1, D + 1):
        out = out + L ** n * (sol.times[f"t{n}"] * n) + Linv ** n * sol.v[n]
    return out


def _Mbar_tail(sol):
    D, Lbi = sol.D, build_Lbar_inv(sol)
    Lbar = Lbi.inverse()
    out = PLaurent(D, {})
    for n in range(1, D + 1):
        out = out - Lbi ** n * (sol.times[f"tbar{n}"] * n) + Lbar ** n * sol.vbar[n]
    return out


def build_M(sol):
    return _M_tail(sol) + ParamScalar.gen("s")


def build_Mbar(sol):
    return _Mbar_tail(sol) + ParamScalar.gen("s")


def poisson(F, G):
    """{F, G} = p (F_p G_s - F_s G_p)."""
    p = PLaurent(F.D, {1: 1}, F.nbeta)
    return p * (F.derive_p() * G.derive("s") - F.derive("s") * G.derive_p())


# ---- verification --------------------------------------------------------

def vanishing_degree(f, D):
    """Largest g such that every coefficient of f vanishes through degree g."""
    if isinstance(f, PLaurent):
        md = f.min_degree()
    else:
        md = f.min_degree()
    return D if md is None else md - 1


def string_residuals(sol, k=1):
    """k-th power form of both string equations; e^{beta s} Q is folded into B."""
    D = sol.D
    B = ParamScalar.gen("B")
    L, Lbi = build_L(sol), build_Lbar_inv(sol)
    Lbar = Lbi.inverse()
    beta = _beta()
    r1 = L ** k - (Lbar ** k) * (B ** k) * (_Mbar_tail(sol) * beta * k).exp()
    r2 = Lbi ** k - (L.inverse() ** k) * (B ** k) * (_M_tail(sol) * beta * k).exp()
    return r1, r2


def verify_string_equations(sol):
    r1, r2 = string_residuals(sol)
    return {"first": vanishing_degree(r1, sol.D), "second": vanishing_degree(r2, sol.D)}


def canonical_relations(sol):
    """({L, M} - L, {Lbar, Mbar} - Lbar, {log L, log Lbar^-1} - beta)."""
    D = sol.D
    L, Lbi = build_L(sol), build_Lbar_inv(sol)
    Lbar = Lbi.inverse()
    r1 = poisson(L, build_M(sol)) - L
    r2 = poisson(Lbar, build_Mbar(sol)) - Lbar
    # log L = log p + a, log Lbar^-1 = log B - log p + b, with log p and log B symbolic
    p_inv = PLaurent(D, {-1: 1})
    _, _, a = log_laurent(L * p_inv, 0)
    _, _, b = log_laurent(Lbi * PLaurent(D, {1: 1}), 0)
    fp, fs = p_inv + a.derive_p(), a.derive("s")
    gp, gs = -p_inv + b.derive_p(), b.derive("s") + _beta()
    r3 = PLaurent(D, {1: 1}) * (fp * gs - fs * gp) - _beta()
    return r1, r2, r3


def lemma_sums(sol):
    """beta sum k t_k (L^k)_0 - S and beta sum k tbar_k (Lbar^-k)_0 + S, S = sum n alpha alphabar."""
    D, beta = sol.D, _beta()
    L, Lbi = build_L(sol), build_Lbar_inv(sol)
    S = TSeries.zero(D)
    for n in range(1, D + 1):
        S = S + sol.alpha[n] * sol.alphabar[n] * n
    a, b = TSeries.zero(D), TSeries.zero(D)
    for k in range(1, D + 1):
        a = a + sol.times[f"t{k}"] * (L ** k).coeff(0) * k
        b = b + sol.times[f"tbar{k}"] * (Lbi ** k).coeff(0) * k
    return a * beta - S, b * beta + S


def lax_t1_residual(sol):
    """dL/dt1 - {(L)_{>=0}, L}, meaningful through degree D - 1."""
    L = build_L(sol)
    return (L.derive("t1") - poisson(L.project_nonneg(), L)).truncate(sol.D - 1)


def homogeneity_mismatches(D, name="c"):
    """Re-solve with scaled times and compare with c-powers of the plain solution."""
    plain, scaled = solve(D), solve(D, scaled_times(D, name))
    bad = []
    for label, sign in (("u", 1), ("ubar", -1), ("v", 1), ("vbar", -1), ("alpha", 1),
                        ("alphabar", -1)):
        for n in range(1, D + 1):
            want = getattr(plain, label)[n] * ParamScalar.gen(name, sign * n)
            if getattr(scaled, label)[n] != want:
                bad.append(f"{label}_{n}")
    if scaled.ubar0 != plain.ubar0:
        bad.append("ubar0")
    return bad


def perturbed(sol, n, delta):
    """Copy of ``sol`` with u_n shifted by ``delta``."""
    u = dict(sol.u)
    u[n] = u[n] + delta
    return replace(sol, u=u)


def lambert_report(D):
    """x = c L^-1 against y e^y with y = c p^-1, c = beta tbar1 ubar0, at t = 0."""
    sol = solve_case_i(D, t_zero=True)
    c = sol.times["tbar1"] * sol.ubar0 * _beta()
    x = build_L(sol).inverse() * c
    y = PLaurent(D, {-1: c})
    rhs = y * y.exp()
    diff = x - rhs
    window = range(-D, 0)
    return {
        "ubar0_is_B": sol.ubar0 == TSeries.param("B", D),
        "orders": {n: diff.coeff(n).is_zero() for n in window},
        "exact": diff.is_zero(),
    }


def case_i_lax_identity(D):
    """At t = 0: Lbar^-1 = ubar0 p^-1 and L = ubar0 Lbar exp(-beta tbar1 Lbar^-1)."""
    sol = solve_case_i(D, t_zero=True)
    Lbi = build_Lbar_inv(sol)
    first = Lbi == PLaurent(D, {-1: sol.ubar0})
    rhs = Lbi.inverse() * sol.ubar0 * (Lbi * (sol.times["tbar1"] * -_beta())).exp()
    return first and build_L(sol) == rhs
