from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given

from hurwitz_toda.combinat import dim_irrep, partitions_of, partitions_up_to, transpose
from hurwitz_toda.hurwitz import cauchy_kernel
from hurwitz_toda.schur import complete_homog, schur, schur_frobenius, schur_principal
from hurwitz_toda.series import ParamScalar, TSeries, substitute

from strategies import partitions


def t(name, D=6):
    return TSeries.var(name, D)


def test_complete_homog_examples():
    assert complete_homog(0, "t", 4) == 1
    assert complete_homog(1, "t", 4) == t("t1", 4)
    assert complete_homog(2, "t", 4) == t("t1", 4) ** 2 * Fraction(1, 2) + t("t2", 4)
    with pytest.raises(ValueError):
        complete_homog(5, "t", 4)


def test_schur_examples():
    t1, t2, t3 = t("t1", 4), t("t2", 4), t("t3", 4)
    assert schur((1,), "t", 4) == t1
    assert schur((2,), "t", 4) == t1 ** 2 * Fraction(1, 2) + t2
    assert schur((1, 1), "t", 4) == t1 ** 2 * Fraction(1, 2) - t2
    assert schur((2, 1), "t", 4) == t1 ** 3 * Fraction(1, 3) - t3
    with pytest.raises(ValueError):
        schur((3, 2), "t", 4)


def test_schur_in_tbar():
    assert schur((2,), "tbar", 3) == TSeries.var("tbar1", 3) ** 2 * Fraction(1, 2) \
        + TSeries.var("tbar2", 3)


def test_principal_examples():
    assert schur_principal((1,)) == 1
    assert schur_principal((2, 1)) == Fraction(1, 3)
    for d in range(1, 7):
        assert sum(schur_principal(l) ** 2 for l in partitions_of(d)) * factorial(d) ** 2 \
            == factorial(d)


@given(partitions(6))
def test_homogeneous_of_degree_size(lam):
    f = schur(lam, "t", 6)
    if lam.size:
        assert f.min_degree() == f.max_degree() == lam.size
    c = ParamScalar.gen("c")
    scaled = substitute(f, {f"t{k}": t(f"t{k}") * c ** k for k in range(1, 7)})
    assert scaled == f * c ** lam.size


@given(partitions(6))
def test_transpose_identity(lam):
    assert schur(lam, "t", 6) == schur(transpose(lam), "t", 6, sign=-1) * (-1) ** lam.size


@given(partitions(6))
def test_frobenius_route(lam):
    assert schur(lam, "t", 6) == schur_frobenius(lam, "t", 6)


@given(partitions(6))
def test_principal_specialization(lam):
    f = substitute(schur(lam, "t", 6), {f"t{k}": (1 if k == 1 else 0) for k in range(1, 7)})
    assert f == schur_principal(lam)
    assert schur_principal(lam) == Fraction(dim_irrep(lam), factorial(lam.size))


@pytest.mark.parametrize("D", range(1, 9))
def test_cauchy_identity(D):
    lhs = TSeries.zero(D)
    for lam in partitions_up_to(D // 2):
        lhs = lhs + schur(lam, "t", D) * schur(lam, "tbar", D, sign=-1)
    assert lhs == cauchy_kernel(D, None, with_Q=False)
