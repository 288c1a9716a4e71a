from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hurwitz_toda import fock
from hurwitz_toda.combinat import Partition, kappa, partitions_up_to
from hurwitz_toda.hurwitz import Z_double, cauchy_kernel
from hurwitz_toda.schur import schur
from hurwitz_toda.series import ParamScalar, TSeries, exp_beta_terms

from strategies import partitions

charges = st.integers(-3, 3)


@given(charges, st.integers(-6, 6))
def test_vacuum_annihilation(s, n):
    vac = fock.MayaState.from_partition((), s)
    if n >= -s:
        assert fock.apply_mode(vac, "psi", n) is None
    if n >= s + 1:
        assert fock.apply_mode(vac, "psistar", n) is None


def test_excited_state_display():
    # |(1), 0> = psi_{-1} psi*_0 |0>
    vac = fock.MayaState(0)
    sign1, st1 = fock.apply_mode(vac, "psistar", 0)
    sign2, st2 = fock.apply_mode(st1, "psi", -1)
    assert sign1 * sign2 == 1
    assert st2 == fock.MayaState.from_partition((1,), 0)


@given(partitions(7), charges)
def test_excited_state_signs_positive(lam, s):
    """Filling levels l_1 > l_2 > ... above the sea in that order gives +|lam, s>."""
    n = len(lam)
    state = fock.MayaState(s - n)
    levels = [part + s - i for i, part in enumerate(lam)]
    # psi_{-l_1} ... psi_{-l_n} acting on the sea: the rightmost (lowest level) acts first
    sign = 1
    for level in reversed(levels):
        r = fock.apply_mode(state, "psi", -level)
        assert r is not None
        sign *= r[0]
        state = r[1]
    assert sign == 1 and state == fock.MayaState.from_partition(lam, s)


@given(partitions(8), charges)
def test_maya_round_trip(lam, s):
    st_ = fock.MayaState.from_partition(lam, s)
    assert st_.partition == lam and st_.charge == s


@given(charges, st.integers(-3, 3), st.integers(-3, 3))
def test_anticommutation(s, m, n):
    assert not fock.anticommutation_failures(6, s, [m, n])


def test_duality():
    states = [fock.MayaState.from_partition(l, s) for s in (-1, 0, 1)
              for l in partitions_up_to(4)]
    assert len(set(states)) == len(states)


@pytest.mark.parametrize("s", range(-3, 4))
def test_lemma_closed_forms(s):
    L0 = fock.bilinear(fock.delta_power(1), 8, s)
    W0 = fock.bilinear(fock.delta_power(2), 8, s)
    J0 = fock.bilinear(fock.delta_power(0), 8, s)
    for lam in partitions_up_to(8):
        assert L0.diagonal(lam) == lam.size + Fraction(s * (s + 1), 2)
        assert W0.diagonal(lam) == kappa(lam) + (2 * s + 1) * lam.size \
            + Fraction(s * (s + 1) * (2 * s + 1), 6)
        assert J0.diagonal(lam) == s
    assert L0.is_diagonal() and W0.is_diagonal()


def test_m0_examples():
    assert fock.build_M0_fermionic(3, 0).diagonal(()) == 0
    assert fock.build_M0_fermionic(3, 0).diagonal((2,)) == 1
    assert fock.build_M0_fermionic(3, 1).diagonal((1,)) == Fraction(9, 8)


@pytest.mark.parametrize("s", [-2, 0, 3])
def test_m0_is_combination(s):
    M0 = fock.build_M0_fermionic(6, s)
    W0 = fock.bilinear(fock.delta_power(2), 6, s)
    L0 = fock.bilinear(fock.delta_power(1), 6, s)
    J0 = fock.bilinear(fock.delta_power(0), 6, s)
    combo = W0.scaled(Fraction(1, 2)) - L0.scaled(Fraction(1, 2)) + J0.scaled(Fraction(1, 8))
    assert not M0.mismatches(combo)
    for lam in partitions_up_to(6):
        assert M0.diagonal(lam) == fock.M0_closed(lam, s)


def test_g_examples():
    N = 4
    g = fock.build_g(3, 0, N)
    b = ParamScalar.gen("beta", 1, N)
    Q = ParamScalar.gen("Q", 1, N)
    assert g.diagonal(()) == 1
    assert g.diagonal((1,)) == ParamScalar.exp_beta(Fraction(1, 2), N) * Q
    assert g.diagonal((2,)) == ParamScalar.exp_beta(2, N) * Q * Q


def test_quantum_torus_examples():
    N = 3
    V = fock.quantum_torus(0, 0, 4, 2, N)
    assert all(V.diagonal(l) == 2 for l in partitions_up_to(4))
    for k in (1, 2):
        V = fock.quantum_torus(k, 0, 5, 1, N)
        for lam in partitions_up_to(5):
            assert V.diagonal(lam) == fock.torus_v0_resummed(k, lam, 1, N)
    # first order in beta for k=1, m=0: J0 + beta * L0
    V = fock.quantum_torus(1, 0, 4, -1, 2)
    L0 = fock.bilinear(fock.delta_power(1, 2), 4, -1)
    J0 = fock.bilinear(fock.delta_power(0, 2), 4, -1)
    assert not V.mismatches(J0 + L0.scaled(ParamScalar.gen("beta", 1, 2)))


def test_quantum_torus_offdiagonal_weight():
    N = 3
    V = fock.quantum_torus(2, 1, 4, 0, N)
    spec = fock.BilinearSpec({1: lambda n: ParamScalar(exp_beta_terms(2 * (n - 1), N), N)}, N)
    assert not V.mismatches(fock.bilinear(spec, 4, 0))


def test_cocycle_examples():
    assert fock.cocycle(fock.shift(1), fock.shift(-1)) == 1
    assert fock.cocycle(fock.delta_power(1), fock.delta_power(1)).is_zero()
    op, gam = fock.commutator_with_cocycle(fock.shift(1), fock.shift(-1), 6, 0)
    assert not op.mismatches(fock.identity_op(6, 0).scaled(gam))


@pytest.mark.parametrize("a,b", [(2, -2), (1, 2), (-3, 3), (2, 1)])
@pytest.mark.parametrize("s", [-1, 0, 2])
def test_current_commutators(a, b, s):
    """[J_a, J_b] = a delta_{a+b,0}."""
    op, gam = fock.commutator_with_cocycle(fock.shift(a), fock.shift(b), 6, s)
    want = a if a + b == 0 else 0
    assert gam == want
    assert not op.mismatches(fock.identity_op(6, s).scaled(want))


def test_commutator_matches_spec_commutator():
    """[A^, B^] = ([A, B])^ + gamma(A, B) on the window."""
    A, B = fock.shift(2), fock.delta_power(2)
    op, gam = fock.commutator_with_cocycle(A, B, 6, 1)
    lin = fock.bilinear(A @ B - B @ A, 6, 1) + fock.identity_op(6, 1).scaled(gam)
    assert not op.mismatches(lin)


def test_exactness_flags():
    up = fock.bilinear(fock.shift(-2), 5, 0)
    down = fock.bilinear(fock.shift(2), 5, 0)
    prod = down @ up
    assert prod.exact_bound == 3
    assert prod.is_exact((1,), (1, 1, 1)) and not prod.is_exact((4,), (4,))


@pytest.mark.parametrize("s", [-2, 0, 1])
def test_exp_current_state_is_schur(s):
    vec = fock.exp_current_state(s, 5)
    assert vec[Partition()] == 1
    assert vec[Partition((1,))] == TSeries.var("t1", 5)
    for lam in partitions_up_to(5):
        assert vec.get(lam, TSeries.zero(5)) == schur(lam, "t", 5)


@pytest.mark.parametrize("lam", partitions_up_to(4))
def test_vacuum_overlap_plus(lam):
    assert fock.vacuum_overlap_plus(lam, 2, 4) == schur(lam, "t", 4)


def test_tau_examples():
    tau0 = fock.tau_expand(0, 4, 3)
    # s = 0 keeps the shift Q -> e^{beta/2} Q; only the prefactor is trivial
    assert tau0 == fock.tau_closed_form(0, 4, 3)
    assert tau0 != Z_double(4, 3)
    assert tau0.beta_coeff(0) == cauchy_kernel(4, 3)
    assert fock.tau_expand(1, 4, 3) == fock.tau_closed_form(1, 4, 3)


@pytest.mark.parametrize("m", [1, -2, 3])
def test_adjoint_actions(m):
    q_bad, w_bad = fock.adjoint_mismatches(m, 6, 1, 4)
    assert not q_bad and not w_bad


@pytest.mark.parametrize("k", [1, 2, 3])
def test_intertwiners_small(k):
    first, second = fock.intertwiner_mismatches(k, 6, -1, 4)
    assert not first and not second


def test_intertwiner_detects_wrong_sign():
    N = 4
    g = fock.build_g(6, 0, N)
    left = fock.bilinear(fock.shift(2, N), 6, 0) @ g
    wrong = (g @ fock.bilinear(fock.shift_exp(2, 2, N), 6, 0)).scaled(
        ParamScalar.gen("Q", 2, N) * ParamScalar.exp_beta(2, N))
    assert left.mismatches(wrong)
