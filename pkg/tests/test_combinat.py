from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given

from hurwitz_toda.combinat import (Partition, character, class_data, dim_irrep, f_class,
                                   hook_lengths, kappa, partitions_of, partitions_up_to,
                                   transpose, z_mu)

from strategies import nonempty_partitions, partitions


def test_partition_normalizes():
    assert Partition([1, 0, 3]) == (3, 1)
    assert Partition() == ()
    assert Partition([2, 2]).size == 4
    with pytest.raises(ValueError):
        Partition([-1])


@pytest.mark.parametrize("text,expected", [("[3,1,1]", (3, 1, 1)), ("[]", ()), (" [2] ", (2,))])
def test_parse(text, expected):
    assert Partition.parse(text) == expected


@pytest.mark.parametrize("bad", ["3,1", "[3,a]", "[0]", "[3,-1]"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Partition.parse(bad)


def test_partitions_of_examples():
    assert list(partitions_of(0)) == [Partition()]
    assert list(partitions_of(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert len(partitions_of(5)) == 7
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_transpose_examples():
    assert transpose((1,)) == (1,)
    assert transpose((3, 1)) == (2, 1, 1)
    assert transpose((2, 2)) == (2, 2)


def test_dim_examples():
    assert dim_irrep((1, 1, 1)) == 1
    assert dim_irrep((2, 1)) == 2
    assert dim_irrep((2, 2)) == 2
    assert hook_lengths((2, 1)) == [3, 1, 1]


def test_kappa_examples():
    assert [kappa(x) for x in [(1,), (2,), (1, 1)]] == [0, 2, -2]


def test_class_data_examples():
    assert (class_data((1, 1, 1)).z, class_data((1, 1, 1)).class_size) == (6, 1)
    assert (class_data((2, 1)).z, class_data((2, 1)).class_size) == (2, 3)
    assert (class_data((3,)).z, class_data((3,)).class_size) == (3, 2)


def test_character_examples():
    for mu in partitions_of(4):
        assert character((4,), mu) == 1
    assert character((1, 1), (2,)) == -1
    assert character((2, 1), (3,)) == -1
    with pytest.raises(ValueError):
        character((2,), (1,))


def test_character_table_s4():
    # rows (4),(3,1),(2,2),(2,1,1),(1^4); columns in partitions_of(4) order
    table = [[1, 1, 1, 1, 1], [-1, 0, -1, 1, 3], [0, -1, 2, 0, 2], [1, 0, -1, -1, 3],
             [-1, 1, 1, -1, 1]]
    assert [[character(l, m) for m in partitions_of(4)] for l in partitions_of(4)] == table


def test_f_class_examples():
    for lam in partitions_up_to(6):
        if lam.size >= 2:
            assert f_class(lam, (1,) * lam.size) == 1
            assert f_class(lam, (2,) + (1,) * (lam.size - 2)) == Fraction(kappa(lam), 2)
    assert f_class((2,), (2,)) == 1


@given(partitions(8))
def test_transpose_involution_and_dim(lam):
    assert transpose(transpose(lam)) == lam
    assert dim_irrep(transpose(lam)) == dim_irrep(lam)
    assert kappa(transpose(lam)) == -kappa(lam)


@given(partitions(8))
def test_kappa_content_form(lam):
    assert kappa(lam) == 2 * sum(j - i for i, j in lam.cells())


@pytest.mark.parametrize("d", range(0, 9))
def test_dim_square_sum(d):
    assert sum(dim_irrep(l) ** 2 for l in partitions_of(d)) == factorial(d)


@pytest.mark.parametrize("d", range(1, 7))
def test_class_sizes(d):
    assert sum(class_data(mu).class_size for mu in partitions_of(d)) == factorial(d)
    for mu in partitions_of(d):
        assert z_mu(mu) * class_data(mu).class_size == factorial(d)


@pytest.mark.parametrize("d", range(1, 7))
def test_orthogonality(d):
    lams = partitions_of(d)
    for a in lams:
        for b in lams:
            s = sum(Fraction(character(a, m) * character(b, m), z_mu(m)) for m in lams)
            assert s == (a == b)


@given(nonempty_partitions(7))
def test_character_identity_class_is_dim(lam):
    assert character(lam, (1,) * lam.size) == dim_irrep(lam)
