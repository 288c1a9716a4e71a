"""Hurwitz numbers, their generating functions and the cut-and-join operator."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .combinat import Partition, dim_irrep, f_class, kappa, partitions_of, partitions_up_to
from .schur import schur, schur_principal
from .series import ParamScalar, TSeries, _pkey, exp_beta_terms, exp_series


class ResourceError(RuntimeError):
    """Requested computation exceeds the configured brute-force bounds."""


@dataclass(frozen=True)
class RamificationProfile:
    d: int
    profiles: tuple

    def __post_init__(self):
        profiles = tuple(Partition(p) for p in self.profiles)
        object.__setattr__(self, "profiles", profiles)
        if self.d < 1:
            raise ValueError("degree d must be positive")
        for p in profiles:
            if p.size != self.d:
                raise ValueError(f"profile {p} does not have size {self.d}")


def hurwitz_burnside(rp):
    """sum_{|lam|=d} (dim lam / d!)^2 prod_k f_lam(mu^(k))."""
    d = rp.d
    total = Fraction(0)
    for lam in partitions_of(d):
        term = Fraction(dim_irrep(lam), factorial(d)) ** 2
        for mu in rp.profiles:
            term *= f_class(lam, mu)
        total += term
    return total


def cycle_type(perm):
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        n, j = 0, start
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        lengths.append(n)
    return Partition(lengths)


def _compose(a, b):
    # (a*b)(i) = a(b(i))
    return tuple(a[i] for i in b)


def _inverse(a):
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def hurwitz_bruteforce(rp, max_d=6, max_r=4):
    """(1/d!) #{(s_1..s_r): s_k of cycle type mu^(k), s_1...s_r = 1}."""
    d, profiles = rp.d, rp.profiles
    if d > max_d or len(profiles) > max_r:
        raise ResourceError(f"brute force limited to d<={max_d}, r<={max_r}")
    classes = {}
    for perm in permutations(range(d)):
        classes.setdefault(cycle_type(perm), []).append(perm)
    identity = tuple(range(d))
    if not profiles:
        return Fraction(1, factorial(d))
    last = profiles[-1]

    def count(k, partial):
        if k == len(profiles) - 1:
            # the last factor is forced to be partial^{-1}
            return 1 if cycle_type(_inverse(partial)) == last else 0
        return sum(count(k + 1, _compose(partial, s)) for s in classes[profiles[k]])

    return Fraction(count(0, identity), factorial(d))


def simple_hurwitz(d, r, mu):
    mu = Partition(mu)
    if mu.size != d:
        raise ValueError(f"|{mu}| != {d}")
    total = Fraction(0)
    for lam in partitions_of(d):
        total += (Fraction(dim_irrep(lam), factorial(d)) ** 2
                  * Fraction(kappa(lam), 2) ** r * f_class(lam, mu))
    return total


def _weight(lam, nbeta):
    # exp(beta kappa/2) Q^|lam|
    w = exp_beta_terms(Fraction(kappa(lam), 2), nbeta)
    q = _pkey(Q=lam.size)
    return ParamScalar({tuple(a + b for a, b in zip(k, q)): v for k, v in w.items()}, nbeta)


def Z_simple(D, nbeta):
    """sum_lam (dim lam/|lam|!) e^{beta kappa/2} Q^|lam| s_lam[t]."""
    total = TSeries.zero(D, nbeta)
    for lam in partitions_up_to(D):
        total = total + schur(lam, "t", D, nbeta) * (_weight(lam, nbeta) * schur_principal(lam))
    return total


def Z_double(D, nbeta):
    """sum_lam e^{beta kappa/2} Q^|lam| s_lam[t] s_lam[-tbar]."""
    total = TSeries.zero(D, nbeta)
    for lam in partitions_up_to(D // 2):
        total = total + (schur(lam, "t", D, nbeta) * schur(lam, "tbar", D, nbeta, sign=-1)
                         * _weight(lam, nbeta))
    return total


def cauchy_kernel(D, nbeta=None, with_Q=True):
    """exp(-sum_k Q^k k t_k tbar_k)."""
    arg = TSeries.zero(D, nbeta)
    for k in range(1, D // 2 + 1):
        coeff = ParamScalar.gen("Q", k, nbeta) * (-k) if with_Q else -k
        arg = arg + TSeries.var(f"t{k}", D, nbeta) * TSeries.var(f"tbar{k}", D, nbeta) * coeff
    return exp_series(arg)


def cut_and_join(f):
    """1/2 sum_{k,l} (kl t_k t_l d/dt_{k+l} + (k+l) t_{k+l} d^2/dt_k dt_l) f."""
    D, nbeta = f.D, f.nbeta
    t = [None] + [TSeries.var(f"t{k}", D, nbeta) for k in range(1, D + 1)]
    first = {k: f.derive(f"t{k}") for k in range(1, D + 1)}
    out = TSeries.zero(D, nbeta)
    for k in range(1, D):
        for l in range(1, D - k + 1):
            if not first[k + l].is_zero():
                out = out + t[k] * t[l] * first[k + l] * Fraction(k * l, 2)
            second = first[k].derive(f"t{l}")
            if not second.is_zero():
                out = out + t[k + l] * second * Fraction(k + l, 2)
    return out


def exp_cut_and_join(f, nbeta=None):
    """sum_{n < nbeta} beta^n M0^n f / n!."""
    nbeta = nbeta if nbeta is not None else f.nbeta
    if nbeta is None:
        raise ValueError("exp(beta M0) needs beta in truncated mode")
    f = f.with_nbeta(nbeta)
    beta = ParamScalar.gen("beta", 1, nbeta)
    out, term = f, f
    for n in range(1, nbeta):
        term = cut_and_join(term) * beta * Fraction(1, n)
        if term.is_zero():
            break
        out = out + term
    return out


def simple_from_genfun(Z, d, r, mu):
    """Read H_d(2^r, mu) off Z_simple via the p_mu <-> t-monomial conversion."""
    from .schur import power_sum_to_t
    mu = Partition(mu)
    pm = power_sum_to_t(mu, "t", Z.D, Z.nbeta)
    (mono, c), = pm.terms.items()
    factor = c[(0,) * 6]
    coeff = Z.coeff(mono).terms.get(_pkey(beta=r, Q=d), 0)
    return Fraction(coeff) * factorial(r) / factor
