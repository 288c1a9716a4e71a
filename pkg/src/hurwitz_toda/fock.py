"""Charged free-fermion Fock space on a truncated partition basis.

Levels are integers.  ``psi_n`` fills level ``-n`` and ``psi*_n`` empties
level ``n``; the charge-s vacuum fills every level <= s, and ``|lam, s>``
fills ``{lam_i + s - i + 1}``.  A basis vector is the product of creation
operators ordered from the highest level on the left, which is the order
produced by the excited-state display, so every ``|lam, s>`` has sign +1.

Bilinears are ``sum_n a_m(n) :psi_{-n+m} psi*_n:`` (move a particle from
level n to level n - m) normal ordered against the charge-0 vacuum.
"""

from fractions import Fraction

from .combinat import Partition, kappa, partitions_up_to
from .hurwitz import Z_double
from .series import ParamScalar, TSeries, exp_beta_terms


class MayaState:
    """Occupied set: every level <= ``sea`` plus the finite set ``extra``."""

    __slots__ = ("sea", "extra")

    def __init__(self, sea, extra=()):
        extra = set(extra)
        while sea + 1 in extra:
            sea += 1
            extra.discard(sea)
        self.sea = sea
        self.extra = frozenset(x for x in extra if x > sea)

    @classmethod
    def from_partition(cls, lam, s):
        lam = Partition(lam)
        return cls(s - len(lam), {part + s - i for i, part in enumerate(lam)})

    @property
    def charge(self):
        return self.sea + len(self.extra)

    @property
    def partition(self):
        s, levels = self.charge, sorted(self.extra, reverse=True)
        return Partition(level - s + i for i, level in enumerate(levels))

    @property
    def top(self):
        return max(self.extra, default=self.sea)

    def occupied(self, level):
        return level <= self.sea or level in self.extra

    def count_above(self, level):
        if level >= self.sea:
            return sum(1 for x in self.extra if x > level)
        return (self.sea - level) + len(self.extra)

    def occupied_levels(self, lo, hi):
        return [n for n in range(lo, hi + 1) if self.occupied(n)]

    def _add(self, level):
        return MayaState(self.sea, self.extra | {level})

    def _remove(self, level):
        if level > self.sea:
            return MayaState(self.sea, self.extra - {level})
        return MayaState(level - 1, set(self.extra) | set(range(level + 1, self.sea + 1)))

    def __eq__(self, other):
        return isinstance(other, MayaState) and (self.sea, self.extra) == (other.sea, other.extra)

    def __hash__(self):
        return hash((self.sea, self.extra))

    def __repr__(self):
        return f"|{self.partition}, {self.charge}>"


def apply_mode(state, kind, n):
    """Apply ``psi_n`` (kind="psi") or ``psi*_n`` (kind="psistar").

    Returns ``(sign, new_state)`` or ``None`` when the result vanishes.
    """
    if kind == "psi":
        level = -n
        if state.occupied(level):
            return None
        return (-1) ** state.count_above(level), state._add(level)
    if kind == "psistar":
        if not state.occupied(n):
            return None
        return (-1) ** state.count_above(n), state._remove(n)
    raise ValueError(f"unknown mode kind {kind!r}")


def _hop(state, src, dst):
    # psi_{-dst} psi*_{src}
    r = apply_mode(state, "psistar", src)
    if r is None:
        return None
    s1, st = r
    r = apply_mode(st, "psi", -dst)
    if r is None:
        return None
    s2, st = r
    return s1 * s2, st


class BilinearSpec:
    """Finite-band matrix: offset m -> weight function n -> scalar.

    The entry a_{n-m, n} multiplies ``:psi_{-n+m} psi*_n:``.
    """

    def __init__(self, weights, nbeta=None):
        self.weights = dict(weights)
        self.nbeta = nbeta

    def weight(self, m, n):
        w = self.weights[m](n)
        if isinstance(w, ParamScalar):
            return w
        return ParamScalar.const(w, self.nbeta)

    @property
    def offsets(self):
        return sorted(self.weights)

    @property
    def raise_(self):
        """Largest increase of |lam| the bilinear can produce."""
        return max([0] + [-m for m in self.weights])

    def __matmul__(self, other):
        """Matrix product: (AB) at offset m1+m2, column n: a_{m1}(n-m2) b_{m2}(n)."""
        nbeta = self.nbeta if self.nbeta is not None else other.nbeta
        out = {}
        for m1 in self.weights:
            for m2 in other.weights:
                def w(n, m1=m1, m2=m2):
                    return self.weight(m1, n - m2) * other.weight(m2, n)
                out.setdefault(m1 + m2, []).append(w)
        return BilinearSpec({m: (lambda n, fs=fs: sum((f(n) for f in fs[1:]), fs[0](n)))
                             for m, fs in out.items()}, nbeta)

    def __sub__(self, other):
        nbeta = self.nbeta if self.nbeta is not None else other.nbeta
        out = {}
        for m in set(self.weights) | set(other.weights):
            def w(n, m=m):
                a = self.weight(m, n) if m in self.weights else 0
                b = other.weight(m, n) if m in other.weights else 0
                return a - b
            out[m] = w
        return BilinearSpec(out, nbeta)

    def scaled(self, c):
        return BilinearSpec({m: (lambda n, m=m: self.weight(m, n) * c) for m in self.weights},
                            self.nbeta)


def shift(m, nbeta=None):
    """Lambda^m, giving J_m."""
    return BilinearSpec({m: lambda n: 1}, nbeta)


def delta_power(k, nbeta=None):
    """Delta^k: diagonal weight n^k (k=0: J_0, 1: L_0, 2: W_0)."""
    return BilinearSpec({0: lambda n: n**k}, nbeta)


def shift_exp(k, m, nbeta):
    """Lambda^m e^{beta k Delta}: weight e^{beta k n} at offset m."""
    return BilinearSpec({m: lambda n: ParamScalar(exp_beta_terms(k * n, nbeta), nbeta)}, nbeta)


def act(spec, state):
    """Bilinear acting on a Maya state; returns {state: ParamScalar}."""
    out = {}

    def add(st, c):
        if st in out:
            out[st] = out[st] + c
        else:
            out[st] = c

    for m in spec.weights:
        if m == 0:
            total = ParamScalar.const(0, spec.nbeta)
            lo, hi = min(state.sea, 0) + 1, max(state.top, 0)
            for n in range(lo, hi + 1):
                occ = 1 if state.occupied(n) else 0
                vac = 1 if n <= 0 else 0
                if occ != vac:
                    total = total + spec.weight(0, n) * (occ - vac)
            if not total.is_zero():
                add(state, total)
            continue
        if m > 0:
            sources = [j + m for j in range(state.sea + 1, state.top + 1)
                       if not state.occupied(j) and state.occupied(j + m)]
        else:
            sources = [n for n in range(state.sea + m + 1, state.top + 1)
                       if state.occupied(n) and not state.occupied(n - m)]
        for n in sources:
            r = _hop(state, n, n - m)
            if r is not None:
                sign, st = r
                add(st, spec.weight(m, n) * sign)
    return {st: c for st, c in out.items() if not c.is_zero()}


class BilinearOp:
    """Matrix of a Fock operator on {(lam, s): |lam| <= d_max}.

    Entries in column mu are exact when |mu| <= ``exact_bound``; products
    whose intermediate states could leave the window lower the bound.
    """

    def __init__(self, d_max, s, entries, nbeta=None, raise_=0, exact_bound=None):
        self.d_max, self.s, self.nbeta = d_max, s, nbeta
        self.entries = {k: v for k, v in entries.items() if not v.is_zero()}
        self.raise_ = raise_
        self.exact_bound = d_max if exact_bound is None else exact_bound

    @property
    def basis(self):
        return partitions_up_to(self.d_max)

    def __getitem__(self, key):
        return self.entries.get(key, ParamScalar.const(0, self.nbeta))

    def is_exact(self, lam, mu):
        return Partition(mu).size <= self.exact_bound

    def diagonal(self, lam):
        lam = Partition(lam)
        return self[(lam, lam)]

    def is_diagonal(self):
        return all(a == b for a, b in self.entries)

    def __matmul__(self, other):
        if (self.d_max, self.s) != (other.d_max, other.s):
            raise ValueError("operators live on different truncated sectors")
        nbeta = self.nbeta if self.nbeta is not None else other.nbeta
        by_row = {}
        for (a, b), v in self.entries.items():
            by_row.setdefault(b, []).append((a, v))
        out = {}
        for (b, c), w in other.entries.items():
            for a, v in by_row.get(b, ()):
                key = (a, c)
                out[key] = out[key] + v * w if key in out else v * w
        bound = min(other.exact_bound, self.exact_bound - other.raise_,
                    self.d_max - other.raise_)
        return BilinearOp(self.d_max, self.s, out, nbeta, self.raise_ + other.raise_, bound)

    def _lin(self, other, sign):
        nbeta = self.nbeta if self.nbeta is not None else other.nbeta
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v * sign if k in out else v * sign
        return BilinearOp(self.d_max, self.s, out, nbeta, max(self.raise_, other.raise_),
                          min(self.exact_bound, other.exact_bound))

    def __add__(self, other):
        return self._lin(other, 1)

    def __sub__(self, other):
        return self._lin(other, -1)

    def scaled(self, c):
        return BilinearOp(self.d_max, self.s, {k: v * c for k, v in self.entries.items()},
                          self.nbeta, self.raise_, self.exact_bound)

    def mismatches(self, other):
        """Entries (both exact) where the two operators differ."""
        bad = []
        for key in set(self.entries) | set(other.entries):
            lam, mu = key
            if self.is_exact(lam, mu) and other.is_exact(lam, mu) and self[key] != other[key]:
                bad.append(key)
        return bad


def bilinear(spec, d_max, s):
    entries = {}
    for mu in partitions_up_to(d_max):
        for st, c in act(spec, MayaState.from_partition(mu, s)).items():
            lam = st.partition
            if lam.size <= d_max:
                entries[(lam, mu)] = c
    return BilinearOp(d_max, s, entries, spec.nbeta, spec.raise_)


def identity_op(d_max, s, nbeta=None):
    one = ParamScalar.const(1, nbeta)
    return BilinearOp(d_max, s, {(lam, lam): one for lam in partitions_up_to(d_max)}, nbeta)


def L0_closed(lam, s):
    return Partition(lam).size + Fraction(s * (s + 1), 2)


def W0_closed(lam, s):
    lam = Partition(lam)
    return kappa(lam) + (2 * s + 1) * lam.size + Fraction(s * (s + 1) * (2 * s + 1), 6)


def M0_closed(lam, s):
    lam = Partition(lam)
    return Fraction(kappa(lam), 2) + s * lam.size + Fraction(4 * s**3 - s, 24)


def m0_spec(nbeta=None):
    """1/2 sum (n - 1/2)^2 :psi_{-n} psi*_n:."""
    return BilinearSpec({0: lambda n: Fraction((2 * n - 1) ** 2, 8)}, nbeta)


def build_M0_fermionic(d_max, s):
    return bilinear(m0_spec(), d_max, s)


def build_g(d_max, s, nbeta):
    """g = e^{beta W0/2} Q^{L0}, diagonal, from the computed L0 and W0 diagonals."""
    L0 = bilinear(delta_power(1), d_max, s)
    W0 = bilinear(delta_power(2), d_max, s)
    entries = {}
    for lam in partitions_up_to(d_max):
        l_val = L0.diagonal(lam).terms.get((0,) * 6, 0)
        w_val = W0.diagonal(lam).terms.get((0,) * 6, 0)
        e = exp_beta_terms(Fraction(w_val) / 2, nbeta)
        lval = Fraction(l_val)
        if lval.denominator != 1:
            raise ValueError("L0 eigenvalue must be an integer")
        entries[(lam, lam)] = ParamScalar(e, nbeta) * ParamScalar.gen("Q", int(lval), nbeta)
    return BilinearOp(d_max, s, entries, nbeta)


def quantum_torus_spec(k, m, nbeta):
    """V^(k)_m = q^{-km} sum q^{kn} :psi_{-n+m} psi*_n:, q = e^beta."""
    return BilinearSpec({m: lambda n: ParamScalar(exp_beta_terms(k * (n - m), nbeta), nbeta)},
                        nbeta)


def quantum_torus(k, m, d_max, s, nbeta):
    return bilinear(quantum_torus_spec(k, m, nbeta), d_max, s)


def cocycle(A, B):
    """gamma(A, B) = <0|[A^, B^]|0>: sum over i <= 0 < j of a_ij b_ji - b_ij a_ji.

    With psi_{-i} filling level i this is the trace of the crossing blocks
    between levels <= 0 and levels > 0.
    """
    nbeta = A.nbeta if A.nbeta is not None else B.nbeta
    total = ParamScalar.const(0, nbeta)
    for X, Y, sign in ((A, B, 1), (B, A, -1)):
        for m in X.weights:
            if m <= 0 or -m not in Y.weights:
                continue
            # entry x_{i, i+m} with i <= 0 < i+m, then y_{i+m, i}
            for i in range(1 - m, 1):
                j = i + m
                total = total + X.weight(m, j) * Y.weight(-m, i) * sign
    return total


def commutator_with_cocycle(A, B, d_max, s):
    """([A^, B^] on the window computed through exact states, gamma(A, B))."""
    nbeta = A.nbeta if A.nbeta is not None else B.nbeta
    entries = {}
    for mu in partitions_up_to(d_max):
        st = MayaState.from_partition(mu, s)
        acc = {}
        for X, Y, sign in ((A, B, 1), (B, A, -1)):
            for mid, c1 in act(Y, st).items():
                for fin, c2 in act(X, mid).items():
                    v = c1 * c2 * sign
                    acc[fin] = acc[fin] + v if fin in acc else v
        for fin, v in acc.items():
            lam = fin.partition
            if lam.size <= d_max and not v.is_zero():
                entries[(lam, mu)] = v
    op = BilinearOp(d_max, s, entries, nbeta, A.raise_ + B.raise_)
    return op, cocycle(A, B)


def _apply_current(vec, k, tk, s, D):
    # J_{-k} t_k on {partition: TSeries}; keeps |lam| <= D
    out = {}
    spec = shift(-k)
    for lam, coeff in vec.items():
        if lam.size + k > D:
            continue
        for st, c in act(spec, MayaState.from_partition(lam, s)).items():
            mu = st.partition
            v = coeff * tk * c.terms[(0,) * 6]
            out[mu] = out[mu] + v if mu in out else v
    return {lam: v for lam, v in out.items() if not v.is_zero()}


def exp_current_state(s, D, vars="t", sign=1, nbeta=None):
    """Coefficients <lam, s| exp(J_-[sign*t]) |s> for |lam| <= D.

    These equal <s| exp(J_+[sign*t]) |lam, s> (see ``vacuum_overlap_plus``)
    and reproduce s_lam[sign*t].
    """
    ts = [TSeries.var(f"{vars}{k}", D, nbeta) * sign for k in range(1, D + 1)]
    vec = {Partition(): TSeries.const(1, D, nbeta)}
    total = dict(vec)
    n = 0
    while vec:
        n += 1
        new = {}
        for k in range(1, D + 1):
            for lam, v in _apply_current(vec, k, ts[k - 1], s, D).items():
                new[lam] = new[lam] + v if lam in new else v
        vec = {lam: v * Fraction(1, n) for lam, v in new.items() if not v.is_zero()}
        for lam, v in vec.items():
            total[lam] = total[lam] + v if lam in total else v
    return {lam: v for lam, v in total.items() if not v.is_zero()}


def vacuum_overlap_plus(lam, s, D, vars="t", nbeta=None):
    """<s| exp(J_+[t]) |lam, s>: lower |lam, s> to the vacuum with J_k, k > 0."""
    lam = Partition(lam)
    ts = [TSeries.var(f"{vars}{k}", D, nbeta) for k in range(1, D + 1)]
    vec = {lam: TSeries.const(1, D, nbeta)}
    result = TSeries.zero(D, nbeta)
    n = 0
    while vec:
        if Partition() in vec:
            result = result + vec[Partition()]
        n += 1
        new = {}
        for k in range(1, D + 1):
            spec = shift(k)
            for mu, coeff in vec.items():
                if mu.size < k:
                    continue
                for st, c in act(spec, MayaState.from_partition(mu, s)).items():
                    nu = st.partition
                    v = coeff * ts[k - 1] * c.terms[(0,) * 6]
                    new[nu] = new[nu] + v if nu in new else v
        vec = {mu: v * Fraction(1, n) for mu, v in new.items() if not v.is_zero()}
    return result


def tau_expand(s, D, nbeta, d_max=None):
    """sum_{lam, mu} <lam,s|g|mu,s> s_lam[t] s_mu[-tbar] with g diagonal."""
    d_max = d_max if d_max is not None else D
    if D > d_max:
        raise ValueError("D must not exceed d_max")
    g = build_g(d_max, s, nbeta)
    left = exp_current_state(s, D, "t", 1, nbeta)
    right = exp_current_state(s, D, "tbar", -1, nbeta)
    total = TSeries.zero(D, nbeta)
    for (lam, mu), val in g.entries.items():
        if lam in left and mu in right:
            total = total + left[lam] * right[mu] * val
    return total


def diagonal_op(d_max, s, fn, nbeta=None):
    """Diagonal operator with entry ``fn(lam)`` (a ParamScalar)."""
    return BilinearOp(d_max, s, {(lam, lam): fn(lam) for lam in partitions_up_to(d_max)}, nbeta)


def _exp_half_w0(d_max, s, nbeta, sign):
    return diagonal_op(d_max, s, lambda lam: ParamScalar(
        exp_beta_terms(sign * W0_closed(lam, s) / 2, nbeta), nbeta), nbeta)


def _q_l0(d_max, s, nbeta, sign):
    def entry(lam):
        return ParamScalar.gen("Q", sign * int(L0_closed(lam, s)), nbeta)
    return diagonal_op(d_max, s, entry, nbeta)


def adjoint_mismatches(m, d_max, s, nbeta):
    """Both adjoint transforms of J_m; returns (Q-part, W0-part) mismatch lists."""
    J = bilinear(shift(m, nbeta), d_max, s)
    lhs = _q_l0(d_max, s, nbeta, 1) @ J @ _q_l0(d_max, s, nbeta, -1)
    rhs = J.scaled(ParamScalar.gen("Q", -m, nbeta))
    q_bad = lhs.mismatches(rhs)
    lhs = _exp_half_w0(d_max, s, nbeta, -1) @ J @ _exp_half_w0(d_max, s, nbeta, 1)
    rhs = bilinear(shift_exp(m, m, nbeta), d_max, s).scaled(
        ParamScalar(exp_beta_terms(Fraction(-m * m, 2), nbeta), nbeta))
    return q_bad, lhs.mismatches(rhs)


def intertwiner_mismatches(k, d_max, s, nbeta):
    """J_k g = g Q^k e^{-bk^2/2} (Lambda^k e^{bk Delta})^ and
    g J_{-k} = Q^k e^{bk^2/2} (Lambda^{-k} e^{bk Delta})^ g."""
    g = build_g(d_max, s, nbeta)
    qk = ParamScalar.gen("Q", k, nbeta)
    left = bilinear(shift(k, nbeta), d_max, s) @ g
    right = (g @ bilinear(shift_exp(k, k, nbeta), d_max, s)).scaled(
        qk * ParamScalar(exp_beta_terms(Fraction(-k * k, 2), nbeta), nbeta))
    first = left.mismatches(right)
    left = g @ bilinear(shift(-k, nbeta), d_max, s)
    right = (bilinear(shift_exp(k, -k, nbeta), d_max, s) @ g).scaled(
        qk * ParamScalar(exp_beta_terms(Fraction(k * k, 2), nbeta), nbeta))
    return first, left.mismatches(right)


def anticommutation_failures(d_max, s, modes):
    """psi_m psi*_n + psi*_n psi_m = delta_{m+n,0} on |lam,s>, |lam| <= d_max - |m| - |n|."""
    bad = []
    for m in modes:
        for n in modes:
            for lam in partitions_up_to(max(d_max - abs(m) - abs(n), 0)):
                st = MayaState.from_partition(lam, s)
                acc = {}
                for first, second in ((("psistar", n), ("psi", m)), (("psi", m), ("psistar", n))):
                    r = apply_mode(st, *first)
                    if r is None:
                        continue
                    r2 = apply_mode(r[1], *second)
                    if r2 is None:
                        continue
                    acc[r2[1]] = acc.get(r2[1], 0) + r[0] * r2[0]
                want = {st: 1} if m + n == 0 else {}
                if {k: v for k, v in acc.items() if v} != want:
                    bad.append((m, n, lam))
    return bad


def torus_v0_resummed(k, lam, s, nbeta):
    """Level sum for V^(k)_0: sum over occupied q^{kn} minus the charge-0 vacuum sum."""
    st = MayaState.from_partition(lam, s)
    total = ParamScalar.const(0, nbeta)
    for n in range(min(st.sea, 0) + 1, max(st.top, 0) + 1):
        d = (1 if st.occupied(n) else 0) - (1 if n <= 0 else 0)
        if d:
            total = total + ParamScalar(exp_beta_terms(k * n, nbeta), nbeta) * d
    return total


def tau_closed_form(s, D, nbeta):
    """e^{beta s(s+1)(2s+1)/12} Q^{s(s+1)/2} Z_double(Q -> e^{beta(s+1/2)} Q)."""
    def shift_q(c):
        out = ParamScalar.const(0, nbeta)
        for k, v in c.items():
            out = out + ParamScalar({k: v}, nbeta) * ParamScalar(
                exp_beta_terms(Fraction(2 * s + 1, 2) * k[2], nbeta), nbeta)
        return out.terms

    pref = ParamScalar(exp_beta_terms(Fraction(s * (s + 1) * (2 * s + 1), 12), nbeta), nbeta) \
        * ParamScalar.gen("Q", s * (s + 1) // 2, nbeta)
    return Z_double(D, nbeta).map_params(shift_q) * pref
