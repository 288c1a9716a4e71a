from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hurwitz_toda.combinat import Partition, kappa, partitions_of, partitions_up_to
from hurwitz_toda.hurwitz import (RamificationProfile, ResourceError, Z_double, Z_simple,
                                  cauchy_kernel, cut_and_join, cycle_type, exp_cut_and_join,
                                  hurwitz_bruteforce, hurwitz_burnside, simple_from_genfun,
                                  simple_hurwitz)
from hurwitz_toda.schur import schur, schur_principal
from hurwitz_toda.series import ParamScalar, TSeries, exp_series, substitute


def rp(d, *profiles):
    return RamificationProfile(d, profiles)


def test_burnside_examples():
    assert hurwitz_burnside(rp(1)) == 1
    assert hurwitz_burnside(rp(2, (2,), (2,))) == Fraction(1, 2)
    assert hurwitz_burnside(rp(3, (3,), (3,))) == Fraction(1, 3)


def test_bruteforce_examples():
    assert hurwitz_bruteforce(rp(2, (2,), (2,))) == Fraction(1, 2)
    assert hurwitz_bruteforce(rp(3, (2, 1), (2, 1))) == Fraction(1, 2)
    for r in range(4):
        assert hurwitz_bruteforce(RamificationProfile(1, ((1,),) * r)) == 1


def test_profile_validation():
    with pytest.raises(ValueError):
        rp(3, (2,))
    with pytest.raises(ValueError):
        rp(0)
    with pytest.raises(ResourceError):
        hurwitz_bruteforce(rp(7, (7,)))


def test_cycle_type():
    assert cycle_type((1, 0, 2)) == (2, 1)
    assert cycle_type((1, 2, 0)) == (3,)


def test_simple_hurwitz_examples():
    assert simple_hurwitz(2, 0, (1, 1)) == Fraction(1, 2)
    assert simple_hurwitz(2, 1, (2,)) == Fraction(1, 2)
    assert simple_hurwitz(2, 2, (1, 1)) == Fraction(1, 2)


@given(st.integers(1, 4).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.sampled_from(partitions_of(d)), max_size=3))))
def test_burnside_matches_bruteforce(data):
    d, profiles = data
    r = rp(d, *profiles)
    assert hurwitz_burnside(r) == hurwitz_bruteforce(r)


@given(st.integers(1, 5).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.sampled_from(partitions_of(d)), max_size=3),
                        st.randoms())))
def test_burnside_order_invariant(data):
    d, profiles, rnd = data
    shuffled = list(profiles)
    rnd.shuffle(shuffled)
    assert hurwitz_burnside(rp(d, *profiles)) == hurwitz_burnside(rp(d, *shuffled))


def test_cut_and_join_examples():
    t1 = TSeries.var("t1", 4)
    assert cut_and_join(t1).is_zero()
    assert cut_and_join(t1 * t1) == TSeries.var("t2", 4) * 2


@pytest.mark.parametrize("lam", partitions_up_to(6))
def test_eigen_equation(lam):
    s = schur(lam, "t", 6)
    assert cut_and_join(s) == s * Fraction(kappa(lam), 2)


def test_exp_cut_and_join_identity_at_order_one():
    f = exp_series(TSeries.var("t1", 4, 1) * ParamScalar.gen("Q", 1, 1))
    assert exp_cut_and_join(f, 1) == f


def test_genfun_examples():
    D, N = 5, 4
    Z = Z_simple(D, N)
    Q = ParamScalar.gen("Q", 1, N)
    # Q^1 part is t1
    q1 = Z.map_params(lambda c: {k: v for k, v in c.items() if k[2] == 1})
    assert q1 == TSeries.var("t1", D, N) * Q
    assert Z.beta_coeff(0) == exp_series(TSeries.var("t1", D, N) * Q)
    Zd = Z_double(D, N)
    assert Zd.beta_coeff(0) == cauchy_kernel(D, N)


def test_simple_principal_specialization():
    D, N = 4, 4
    Z = Z_simple(D, N)
    spec = substitute(Z, {f"t{k}": (1 if k == 1 else 0) for k in range(1, D + 1)})
    want = TSeries.zero(D, N)
    for lam in partitions_up_to(D):
        w = ParamScalar.exp_beta(Fraction(kappa(lam), 2), N) * ParamScalar.gen("Q", lam.size, N)
        want = want + TSeries.const(w * schur_principal(lam) ** 2, D, N)
    assert spec == want


def test_double_specializes_to_simple():
    D, N = 6, 4
    Zd = Z_double(D, N)
    spec = substitute(Zd, {f"tbar{k}": (-1 if k == 1 else 0) for k in range(1, D + 1)})
    assert spec.truncate(D // 2) == Z_simple(D, N).truncate(D // 2)


def test_double_symmetry():
    D, N = 6, 5
    Z = Z_double(D, N)
    swapped = TSeries(D, {m[D:] + m[:D]: {k: v * (-1) ** k[0] for k, v in c.items()}
                          for m, c in Z.terms.items()}, N)
    assert swapped == Z


@pytest.mark.parametrize("d", range(1, 5))
@pytest.mark.parametrize("r", range(0, 4))
def test_generating_function_consistency(d, r):
    Z = Z_simple(4, 4)
    for mu in partitions_of(d):
        assert simple_from_genfun(Z, d, r, mu) == simple_hurwitz(d, r, mu)


def test_exponential_representations_small():
    D, N = 4, 4
    e_qt1 = exp_series(TSeries.var("t1", D, N) * ParamScalar.gen("Q", 1, N))
    assert Z_simple(D, N) == exp_cut_and_join(e_qt1, N)
    assert Z_double(D, N) == exp_cut_and_join(cauchy_kernel(D, N), N)
