"""Complete homogeneous and Schur functions in the time variables."""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .combinat import Partition, character, dim_irrep, partitions_of, z_mu
from .series import TSeries


def _check_vars(vars):
    if vars not in ("t", "tbar"):
        raise ValueError(f"vars must be 't' or 'tbar', got {vars!r}")


@lru_cache(maxsize=None)
def complete_homog(m, vars, D, nbeta=None, sign=1):
    """h_m in t (or tbar): coefficient of z^m in exp(sum t_k z^k).

    ``sign=-1`` evaluates at -t, i.e. h_m[-t].
    """
    _check_vars(vars)
    if m < 0:
        return TSeries.zero(D, nbeta)
    if m > D:
        raise ValueError(f"h_{m} exceeds truncation degree {D}")
    terms = {}
    for mu in partitions_of(m):
        mono = [0] * (2 * D)
        coeff = Fraction(1)
        for part, mult in mu.multiplicities().items():
            mono[part - 1 + (D if vars == "tbar" else 0)] = mult
            coeff *= Fraction(sign**mult, factorial(mult))
        terms[tuple(mono)] = coeff
    return TSeries(D, terms, nbeta)


def _det(rows, D, nbeta):
    n = len(rows)
    memo = {}

    def minor(i, cols):
        # expand along row i over the still-free columns
        if i == n:
            return TSeries.const(1, D, nbeta)
        key = (i, cols)
        if key in memo:
            return memo[key]
        total = TSeries.zero(D, nbeta)
        free = [j for j in range(n) if not cols >> j & 1]
        for pos, j in enumerate(free):
            entry = rows[i][j]
            if entry.is_zero():
                continue
            term = entry * minor(i + 1, cols | (1 << j))
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, 0)


@lru_cache(maxsize=None)
def schur(lam, vars="t", D=None, nbeta=None, sign=1):
    """Jacobi-Trudi determinant det(h_{lam_i - i + j}); ``sign=-1`` gives s_lam[-t]."""
    _check_vars(vars)
    lam = Partition(lam)
    if D is None:
        D = max(lam.size, 1)
    if lam.size > D:
        raise ValueError(f"|{lam}| exceeds truncation degree {D}")
    n = len(lam)
    rows = [[complete_homog(lam[i] - i + j, vars, D, nbeta, sign) if lam[i] - i + j <= D
             else TSeries.zero(D, nbeta) for j in range(n)] for i in range(n)]
    return _det(rows, D, nbeta)


def schur_principal(lam):
    """s_lam[1, 0, 0, ...] = dim lam / |lam|!."""
    lam = Partition(lam)
    return Fraction(dim_irrep(lam), factorial(lam.size))


def power_sum_to_t(mu, vars="t", D=None, nbeta=None):
    """p_mu written in time variables, p_k = k t_k.

    This is the only place the conversion factors k^{m_k} appear.
    """
    _check_vars(vars)
    mu = Partition(mu)
    D = D or max(mu.size, 1)
    mono = [0] * (2 * D)
    coeff = 1
    for part, mult in mu.multiplicities().items():
        mono[part - 1 + (D if vars == "tbar" else 0)] = mult
        coeff *= part**mult
    return TSeries(D, {tuple(mono): coeff}, nbeta)


def schur_frobenius(lam, vars="t", D=None, nbeta=None):
    """Independent route: sum_mu chi_lam(mu)/z_mu p_mu."""
    lam = Partition(lam)
    D = D or max(lam.size, 1)
    total = TSeries.zero(D, nbeta)
    for mu in partitions_of(lam.size):
        total = total + power_sum_to_t(mu, vars, D, nbeta) * Fraction(character(lam, mu), z_mu(mu))
    return total
