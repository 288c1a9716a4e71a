"""Exact coefficient ring and truncated series.

Three layers:

* ``ParamScalar`` -- Laurent polynomials in formal parameters
  (beta, s, Q, B, c, hbar) with rational coefficients.  beta and s carry
  non-negative exponents; the others are Laurent.  ``B`` stands for
  ``Q*exp(beta*s)`` and differentiates as ``d/ds B = beta*B``.
* ``TSeries`` -- polynomials in t_1..t_D, tbar_1..tbar_D truncated at
  weighted degree D (deg t_k = deg tbar_k = k), coefficients ParamScalar.
* ``PLaurent`` -- Laurent polynomials in the symbol p with TSeries
  coefficients.

beta is either an exact polynomial generator (``nbeta=None``) or a power
series truncated at order ``nbeta``.  Combining the two modes raises.

Internally a TSeries is ``{tmono: {pkey: Fraction}}`` where ``tmono`` is a
dense exponent tuple ``(t_1..t_D, tbar_1..tbar_D)`` and ``pkey`` the
exponent tuple over ``PARAMS``.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial
import re

PARAMS = ("beta", "s", "Q", "B", "c", "hbar")
_NP = len(PARAMS)
_ZK = (0,) * _NP
_IDX = {name: i for i, name in enumerate(PARAMS)}


def _check_modes(a, b):
    if a != b:
        raise ValueError(f"mixing beta modes: nbeta={a} vs nbeta={b}")
    return a


def _exact(x):
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"exact rational required, got {type(x).__name__}")
    return x


# ---- raw parameter dicts -------------------------------------------------

def _pclean(d, nbeta):
    return {k: v for k, v in d.items() if v and (nbeta is None or k[0] < nbeta)}


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + sign * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _pmul(a, b, nbeta):
    out = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            if nbeta is not None and k1[0] + k2[0] >= nbeta:
                continue
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _pscale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def _pderive_s(a, nbeta):
    out = {}
    for k, v in a.items():
        if k[1]:
            kk = list(k)
            kk[1] -= 1
            kk = tuple(kk)
            out[kk] = out.get(kk, 0) + v * k[1]
        if k[3] and (nbeta is None or k[0] + 1 < nbeta):
            kk = list(k)
            kk[0] += 1
            kk = tuple(kk)
            out[kk] = out.get(kk, 0) + v * k[3]
    return {k: v for k, v in out.items() if v}


def _pkey(**exps):
    key = [0] * _NP
    for name, e in exps.items():
        key[_IDX[name]] = e
    return tuple(key)


class ParamScalar:
    """Element of Q[beta, s][Q^±, B^±, c^±, hbar^±], optionally beta-truncated."""

    __slots__ = ("terms", "nbeta")

    def __init__(self, terms=None, nbeta=None):
        terms = dict(terms or {})
        for k, v in terms.items():
            if len(k) != _NP:
                raise ValueError(f"bad parameter key {k}")
            if k[0] < 0 or k[1] < 0:
                raise ValueError("beta and s exponents must be non-negative")
            _exact(v)
        self.terms = _pclean(terms, nbeta)
        self.nbeta = nbeta

    @classmethod
    def const(cls, value, nbeta=None):
        return cls({_ZK: _exact(value)}, nbeta)

    @classmethod
    def gen(cls, name, power=1, nbeta=None):
        return cls({_pkey(**{name: power}): 1}, nbeta)

    @classmethod
    def exp_beta(cls, x, nbeta):
        """exp(beta * x) for rational x; needs a beta truncation order."""
        return cls(exp_beta_terms(x, nbeta), nbeta)

    def _coerce(self, other):
        if isinstance(other, ParamScalar):
            _check_modes(self.nbeta, other.nbeta)
            return other.terms
        return {_ZK: _exact(other)} if other else {}

    def __add__(self, other):
        return ParamScalar(_padd(self.terms, self._coerce(other)), self.nbeta)

    __radd__ = __add__

    def __sub__(self, other):
        return ParamScalar(_padd(self.terms, self._coerce(other), -1), self.nbeta)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ParamScalar(_pscale(self.terms, -1), self.nbeta)

    def __mul__(self, other):
        if isinstance(other, (TSeries, PLaurent)):
            return NotImplemented
        return ParamScalar(_pmul(self.terms, self._coerce(other), self.nbeta), self.nbeta)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = ParamScalar.const(1, self.nbeta)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ParamScalar):
            return self.nbeta == other.nbeta and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({_ZK: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.nbeta))

    def is_zero(self):
        return not self.terms

    def inverse(self):
        """Inverse of m*(1 + y): m an invertible monomial, y beta-nilpotent."""
        lead = {k: v for k, v in self.terms.items() if k[0] == 0}
        if len(lead) != 1:
            raise ValueError(f"not invertible: {self}")
        (k, v), = lead.items()
        if k[1] != 0:
            raise ValueError(f"not invertible: {self}")
        inv_key = (0, 0) + tuple(-e for e in k[2:])
        m_inv = {inv_key: Fraction(1) / v}
        rest = _pmul(_padd(self.terms, lead, -1), m_inv, self.nbeta)
        if rest and self.nbeta is None:
            raise ValueError(f"not invertible in polynomial beta mode: {self}")
        out, power = {_ZK: 1}, {_ZK: 1}
        neg_rest = _pscale(rest, -1)
        while True:
            power = _pmul(power, neg_rest, self.nbeta)
            if not power:
                break
            out = _padd(out, power)
        return ParamScalar(_pmul(out, m_inv, self.nbeta), self.nbeta)

    def derive_s(self):
        return ParamScalar(_pderive_s(self.terms, self.nbeta), self.nbeta)

    def beta_coeff(self, j):
        return ParamScalar({(0,) + k[1:]: v for k, v in self.terms.items() if k[0] == j},
                           self.nbeta)

    def __repr__(self):
        return _pstr(self.terms) if self.terms else "0"


def exp_beta_terms(x, nbeta):
    if nbeta is None:
        raise ValueError("exp(beta*x) needs beta in truncated mode")
    x = _exact(x)
    out = {}
    for j in range(nbeta):
        v = Fraction(x) ** j / factorial(j)
        if v:
            out[_pkey(beta=j)] = v
    return out


def _pstr(terms):
    parts = []
    for k in sorted(terms):
        mono = "*".join(f"{n}^{e}" if e != 1 else n for n, e in zip(PARAMS, k) if e)
        v = terms[k]
        parts.append(f"({v})" + ("*" + mono if mono else ""))
    return " + ".join(parts)


# ---- truncated multivariate series --------------------------------------

@lru_cache(maxsize=None)
def _weights(D):
    return tuple(range(1, D + 1)) * 2


def _deg(mono, D):
    return sum(w * e for w, e in zip(_weights(D), mono))


_VAR_RE = re.compile(r"^(t|tbar)(\d+)$")


def _var_index(var, D):
    m = _VAR_RE.match(var)
    if not m:
        raise ValueError(f"unknown variable {var!r}")
    k = int(m.group(2))
    if not 1 <= k <= D:
        raise ValueError(f"variable {var} outside truncation degree {D}")
    return (k - 1) if m.group(1) == "t" else (D + k - 1)


class TSeries:
    """Series in t_k, tbar_k truncated at weighted degree D."""

    __slots__ = ("D", "nbeta", "terms")

    def __init__(self, D, terms=None, nbeta=None, _trusted=False):
        if D < 1:
            raise ValueError("truncation degree must be positive")
        self.D = D
        self.nbeta = nbeta
        if _trusted:
            self.terms = terms
            return
        out = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != 2 * D or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for D={D}")
            if _deg(mono, D) > D:
                continue
            if isinstance(coeff, ParamScalar):
                _check_modes(nbeta, coeff.nbeta)
                pd = coeff.terms
            elif isinstance(coeff, dict):
                pd = _pclean(coeff, nbeta)
            else:
                pd = {_ZK: _exact(coeff)} if coeff else {}
            if pd:
                out[mono] = dict(pd)
        self.terms = out

    # constructors
    @classmethod
    def zero(cls, D, nbeta=None):
        return cls(D, {}, nbeta, _trusted=True)

    @classmethod
    def const(cls, value, D, nbeta=None):
        if isinstance(value, ParamScalar):
            _check_modes(nbeta, value.nbeta)
            pd = value.terms
        else:
            pd = {_ZK: _exact(value)} if value else {}
        return cls(D, {(0,) * (2 * D): dict(pd)} if pd else {}, nbeta, _trusted=True)

    @classmethod
    def var(cls, name, D, nbeta=None, power=1):
        """``var("t3", D)`` or ``var("tbar1", D)``; params via ``param``."""
        mono = [0] * (2 * D)
        mono[_var_index(name, D)] = power
        return cls(D, {tuple(mono): {_ZK: 1}}, nbeta)

    @classmethod
    def param(cls, name, D, nbeta=None, power=1):
        return cls.const(ParamScalar.gen(name, power, nbeta), D, nbeta)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, TSeries):
            if other.D != self.D:
                raise ValueError(f"mismatched truncation degree {self.D} vs {other.D}")
            _check_modes(self.nbeta, other.nbeta)
            return other
        if isinstance(other, (ParamScalar, int, Fraction)):
            return TSeries.const(other, self.D, self.nbeta)
        raise TypeError(f"cannot combine TSeries with {type(other).__name__}")

    def _combine(self, other, sign):
        other = self._coerce(other)
        out = {m: dict(c) for m, c in self.terms.items()}
        for m, c in other.terms.items():
            merged = _padd(out.get(m, {}), c, sign)
            if merged:
                out[m] = merged
            else:
                out.pop(m, None)
        return TSeries(self.D, out, self.nbeta, _trusted=True)

    def __add__(self, other):
        if isinstance(other, PLaurent):
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PLaurent):
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TSeries(self.D, {m: _pscale(c, -1) for m, c in self.terms.items()},
                       self.nbeta, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, PLaurent):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if not other:
                return TSeries.zero(self.D, self.nbeta)
            return TSeries(self.D, {m: _pscale(c, other) for m, c in self.terms.items()},
                           self.nbeta, _trusted=True)
        other = self._coerce(other)
        D, nbeta = self.D, self.nbeta
        w = _weights(D)
        b_items = sorted(((sum(x * y for x, y in zip(w, m)), m, c)
                          for m, c in other.terms.items()), key=lambda x: x[0])
        out = {}
        for m1, c1 in self.terms.items():
            d1 = sum(x * y for x, y in zip(w, m1))
            for d2, m2, c2 in b_items:
                if d1 + d2 > D:
                    break
                m = tuple(x + y for x, y in zip(m1, m2))
                acc = out.get(m)
                if acc is None:
                    acc = out[m] = {}
                for k1, v1 in c1.items():
                    b1 = k1[0]
                    for k2, v2 in c2.items():
                        if nbeta is not None and b1 + k2[0] >= nbeta:
                            continue
                        k = tuple(x + y for x, y in zip(k1, k2))
                        acc[k] = acc.get(k, 0) + v1 * v2
        res = {}
        for m, acc in out.items():
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                res[m] = acc
        return TSeries(D, res, nbeta, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = TSeries.const(1, self.D, self.nbeta), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, TSeries):
            return (self.D, self.nbeta, self.terms) == (other.D, other.nbeta, other.terms)
        if isinstance(other, (int, Fraction, ParamScalar)):
            return self == TSeries.const(other, self.D, self.nbeta)
        return NotImplemented

    __hash__ = None

    # inspection
    def is_zero(self):
        return not self.terms

    def degree(self, mono):
        return _deg(mono, self.D)

    def min_degree(self):
        """Lowest weighted degree present (None for zero)."""
        return min((_deg(m, self.D) for m in self.terms), default=None)

    def max_degree(self):
        return max((_deg(m, self.D) for m in self.terms), default=None)

    def coeff(self, mono):
        return ParamScalar(self.terms.get(tuple(mono), {}), self.nbeta)

    def constant(self):
        return self.coeff((0,) * (2 * self.D))

    def monomial(self, **exps):
        """Exponent tuple from keywords like ``t1=2, tbar3=1``."""
        mono = [0] * (2 * self.D)
        for name, e in exps.items():
            mono[_var_index(name, self.D)] = e
        return tuple(mono)

    def truncate(self, g):
        return TSeries(self.D, {m: c for m, c in self.terms.items() if _deg(m, self.D) <= g},
                       self.nbeta, _trusted=True)

    def homogeneous(self, g):
        return TSeries(self.D, {m: c for m, c in self.terms.items() if _deg(m, self.D) == g},
                       self.nbeta, _trusted=True)

    def t_degree(self, mono):
        return sum(w * e for w, e in zip(range(1, self.D + 1), mono[:self.D]))

    def tbar_degree(self, mono):
        return sum(w * e for w, e in zip(range(1, self.D + 1), mono[self.D:]))

    def map_params(self, fn):
        """Apply ``fn(pdict) -> pdict`` to every coefficient."""
        out = {}
        for m, c in self.terms.items():
            c2 = _pclean(fn(c), self.nbeta)
            if c2:
                out[m] = c2
        return TSeries(self.D, out, self.nbeta, _trusted=True)

    def beta_coeff(self, j):
        """Coefficient of beta^j (as a series with beta removed)."""
        return self.map_params(
            lambda c: {(0,) + k[1:]: v for k, v in c.items() if k[0] == j})

    def with_nbeta(self, nbeta):
        """Re-embed into another beta mode, dropping orders >= nbeta."""
        return TSeries(self.D, {m: _pclean(c, nbeta) for m, c in self.terms.items()},
                       nbeta)

    def retruncate(self, D):
        """Re-embed into truncation degree D (dropping variables above D)."""
        out = {}
        old = self.D
        for m, c in self.terms.items():
            t, tb = m[:old], m[old:]
            if any(t[D:]) or any(tb[D:]):
                continue
            nm = tuple(t[:D]) + (0,) * max(0, D - old) + tuple(tb[:D]) + (0,) * max(0, D - old)
            out[nm] = c
        return TSeries(D, out, self.nbeta)

    def is_nilpotent(self):
        """True if every term has positive degree or (truncated mode) positive beta power."""
        zero = (0,) * (2 * self.D)
        c = self.terms.get(zero)
        if not c:
            return True
        return self.nbeta is not None and all(k[0] > 0 for k in c)

    # calculus
    def derive(self, var):
        """Partial derivative by ``t<k>``, ``tbar<k>`` or ``s``."""
        if var == "s":
            return self.map_params(lambda c: _pderive_s(c, self.nbeta))
        i = _var_index(var, self.D)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                nm = m[:i] + (e - 1,) + m[i + 1:]
                out[nm] = _padd(out.get(nm, {}), _pscale(c, e))
        return TSeries(self.D, {m: c for m, c in out.items() if c}, self.nbeta, _trusted=True)

    def exp(self):
        return exp_series(self)

    def inverse(self):
        """Inverse of a unit (invertible monomial plus nilpotent part)."""
        zero = (0,) * (2 * self.D)
        c0 = {k: v for k, v in self.terms.get(zero, {}).items() if k[0] == 0}
        if len(c0) != 1:
            raise ValueError("series is not a unit")
        m_inv = ParamScalar(c0, self.nbeta).inverse()
        y = self * m_inv - 1
        if not y.is_nilpotent():
            raise ValueError("series is not a unit")
        out, power = TSeries.const(1, self.D, self.nbeta), TSeries.const(1, self.D, self.nbeta)
        neg_y = -y
        while True:
            power = power * neg_y
            if power.is_zero():
                break
            out = out + power
        return out * m_inv

    def substitute(self, assignment):
        return substitute(self, assignment)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[{_pstr(c)}]{_mono_str(m, self.D)}"
                          for m, c in sorted(self.terms.items(), key=lambda x: _order_key(x[0], self.D)))


def _mono_str(m, D):
    parts = []
    for i, e in enumerate(m):
        if e:
            name = f"t{i + 1}" if i < D else f"tbar{i - D + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
    return ("*" + "*".join(parts)) if parts else ""


def _order_key(m, D):
    # graded lexicographic: weighted degree, then t exponents, then tbar exponents
    return (_deg(m, D), m)


def exp_series(f):
    """exp(f) for f nilpotent modulo the truncation."""
    if not f.is_nilpotent():
        raise ValueError("exp needs a series with zero constant term")
    out = TSeries.const(1, f.D, f.nbeta)
    power = TSeries.const(1, f.D, f.nbeta)
    n = 0
    while True:
        n += 1
        power = power * f * Fraction(1, n)
        if power.is_zero():
            return out
        out = out + power


def log_unit(f):
    """Split a unit f = c * (1 + y) and return ``(c, log(1 + y))``.

    ``c`` is the beta-free constant monomial of f (a ParamScalar); its own
    logarithm is left symbolic.
    """
    zero = (0,) * (2 * f.D)
    c0 = {k: v for k, v in f.terms.get(zero, {}).items() if k[0] == 0}
    if len(c0) != 1 or next(iter(c0))[1] != 0:
        raise ValueError("leading coefficient is not invertible")
    c = ParamScalar(c0, f.nbeta)
    y = f * c.inverse() - 1
    if not y.is_nilpotent():
        raise ValueError("leading coefficient is not invertible")
    return c, log1p_series(y)


def log1p_series(y):
    out = TSeries.zero(y.D, y.nbeta)
    power = TSeries.const(1, y.D, y.nbeta)
    n = 0
    while True:
        n += 1
        power = power * y
        if power.is_zero():
            return out
        out = out + power * Fraction((-1) ** (n + 1), n)


def substitute(f, assignment):
    """Substitute variables ``{"t1": value, ...}``.

    A value is either a TSeries whose lowest degree is at least the degree
    of the replaced variable, or a scalar (number / ParamScalar).  Scalar
    substitution is a specialization: the result keeps truncation D but is
    only complete in the remaining variables up to D minus the weight that
    the specialized variables could have carried.
    """
    D, nbeta = f.D, f.nbeta
    subs = {}
    for var, value in assignment.items():
        i = _var_index(var, D)
        k = (i % D) + 1
        if isinstance(value, TSeries):
            if value.D != D:
                raise ValueError("substituted series has a different truncation degree")
            _check_modes(nbeta, value.nbeta)
            md = value.min_degree()
            if md is not None and md < k:
                raise ValueError(f"substituting {var} by a series of degree {md} < {k} "
                                 "breaks the truncation")
        elif isinstance(value, (int, Fraction, ParamScalar)):
            value = TSeries.const(value, D, nbeta)
        else:
            raise TypeError(f"bad substitution value for {var}")
        subs[i] = value
    powers = {i: [TSeries.const(1, D, nbeta)] for i in subs}
    out = TSeries.zero(D, nbeta)
    for m, c in f.terms.items():
        keep = tuple(0 if i in subs else e for i, e in enumerate(m))
        term = TSeries(D, {keep: c}, nbeta, _trusted=True)
        for i, v in subs.items():
            e = m[i]
            if not e:
                continue
            plist = powers[i]
            while len(plist) <= e:
                plist.append(plist[-1] * v)
            term = term * plist[e]
            if term.is_zero():
                break
        out = out + term
    return out


# ---- Laurent series in p --------------------------------------------------

class PLaurent:
    """Finite Laurent series in p with TSeries coefficients.

    ``lo`` / ``hi`` optionally bound the window; products drop exponents
    below ``lo``.  ``None`` means the side is bounded only by the
    t-degree truncation (the coefficients vanish far from the diagonal).
    """

    __slots__ = ("D", "nbeta", "coeffs", "lo", "hi")

    def __init__(self, D, coeffs=None, nbeta=None, lo=None, hi=None):
        self.D, self.nbeta, self.lo, self.hi = D, nbeta, lo, hi
        out = {}
        for n, c in (coeffs or {}).items():
            if not isinstance(c, TSeries):
                c = TSeries.const(c, D, nbeta)
            if c.D != D:
                raise ValueError("mismatched truncation degree")
            _check_modes(nbeta, c.nbeta)
            if (lo is not None and n < lo) or (hi is not None and n > hi):
                continue
            if not c.is_zero():
                out[int(n)] = c
        self.coeffs = out

    @classmethod
    def monomial(cls, n, coeff, D, nbeta=None, lo=None, hi=None):
        return cls(D, {n: coeff}, nbeta, lo, hi)

    @classmethod
    def p(cls, D, nbeta=None):
        return cls(D, {1: 1}, nbeta)

    def _coerce(self, other):
        if isinstance(other, PLaurent):
            if other.D != self.D:
                raise ValueError(f"mismatched truncation degree {self.D} vs {other.D}")
            _check_modes(self.nbeta, other.nbeta)
            return other
        if isinstance(other, (TSeries, ParamScalar, int, Fraction)):
            return PLaurent(self.D, {0: other}, self.nbeta)
        raise TypeError(f"cannot combine PLaurent with {type(other).__name__}")

    def _window(self, other):
        lo = None if self.lo is None or other.lo is None else min(self.lo, other.lo)
        hi = None if self.hi is None or other.hi is None else max(self.hi, other.hi)
        return lo, hi

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out[n] + c if n in out else c
        lo, hi = self._window(other)
        return PLaurent(self.D, out, self.nbeta, lo, hi)

    __radd__ = __add__

    def __neg__(self):
        return PLaurent(self.D, {n: -c for n, c in self.coeffs.items()}, self.nbeta,
                        self.lo, self.hi)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar, TSeries)):
            return PLaurent(self.D, {n: c * other for n, c in self.coeffs.items()},
                            self.nbeta, self.lo, self.hi)
        other = self._coerce(other)
        lo, _ = self._window(other)
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        out = {}
        for n1, c1 in self.coeffs.items():
            for n2, c2 in other.coeffs.items():
                n = n1 + n2
                if lo is not None and n < lo:
                    continue
                prod = c1 * c2
                if prod.is_zero():
                    continue
                out[n] = out[n] + prod if n in out else prod
        return PLaurent(self.D, out, self.nbeta, lo, hi)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = PLaurent(self.D, {0: 1}, self.nbeta, self.lo), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, PLaurent):
            return self.D == other.D and self.nbeta == other.nbeta and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, ParamScalar, TSeries)):
            return self == self._coerce(other)
        return NotImplemented

    __hash__ = None

    def is_zero(self):
        return not self.coeffs

    def coeff(self, n):
        if (self.lo is not None and n < self.lo) or (self.hi is not None and n > self.hi):
            raise ValueError(f"exponent {n} outside window [{self.lo}, {self.hi}]")
        return self.coeffs.get(n, TSeries.zero(self.D, self.nbeta))

    def residue(self):
        """res(f dp): the coefficient of p^-1."""
        return self.coeff(-1)

    def exponents(self):
        return sorted(self.coeffs)

    def project_nonneg(self):
        return PLaurent(self.D, {n: c for n, c in self.coeffs.items() if n >= 0},
                        self.nbeta, self.lo, self.hi)

    def project_neg(self):
        return PLaurent(self.D, {n: c for n, c in self.coeffs.items() if n < 0},
                        self.nbeta, self.lo, self.hi)

    def map(self, fn):
        return PLaurent(self.D, {n: fn(c) for n, c in self.coeffs.items()}, self.nbeta,
                        self.lo, self.hi)

    def truncate(self, g):
        return self.map(lambda c: c.truncate(g))

    def min_degree(self):
        degs = [c.min_degree() for c in self.coeffs.values()]
        return min(degs, default=None)

    def derive_p(self):
        return PLaurent(self.D, {n - 1: c * n for n, c in self.coeffs.items() if n},
                        self.nbeta, None if self.lo is None else self.lo - 1,
                        None if self.hi is None else self.hi - 1)

    def derive(self, var):
        if var == "p":
            return self.derive_p()
        return self.map(lambda c: c.derive(var))

    def is_nilpotent(self):
        return all(c.is_nilpotent() for c in self.coeffs.values())

    def _unit_split(self):
        units = [n for n, c in self.coeffs.items() if not c.is_nilpotent()]
        if len(units) != 1:
            raise ValueError("no unique invertible leading term")
        lead = units[0]
        return lead, self.coeffs[lead]

    def inverse(self):
        lead, c = self._unit_split()
        c_inv = c.inverse()
        scale = PLaurent(self.D, {-lead: c_inv}, self.nbeta)
        y = self * scale - 1
        out = PLaurent(self.D, {0: 1}, self.nbeta)
        power = PLaurent(self.D, {0: 1}, self.nbeta)
        neg_y = -y
        while True:
            power = power * neg_y
            if power.is_zero():
                break
            out = out + power
        res = out * scale
        res.lo, res.hi = self.lo, self.hi
        return res

    def exp(self):
        if not self.is_nilpotent():
            raise ValueError("exp needs nilpotent coefficients")
        out = PLaurent(self.D, {0: 1}, self.nbeta)
        power = PLaurent(self.D, {0: 1}, self.nbeta)
        n = 0
        while True:
            n += 1
            power = power * self * Fraction(1, n)
            if power.is_zero():
                return out
            out = out + power

    def substitute(self, assignment):
        return self.map(lambda c: substitute(c, assignment))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[n]})*p^{n}" for n in sorted(self.coeffs, reverse=True))


def log_laurent(f, lead):
    """Write f = c * p^lead * exp(series) and return ``(c, lead, series)``.

    ``c`` is the beta-free constant monomial of the p^lead coefficient;
    the remaining unit factor (including the t-dependence of the lead
    coefficient) goes into ``series`` as a PLaurent whose coefficients are
    all nilpotent.
    """
    if lead not in f.coeffs:
        raise ValueError(f"no p^{lead} term")
    head = f.coeffs[lead]
    zero = (0,) * (2 * f.D)
    c0 = {k: v for k, v in head.terms.get(zero, {}).items() if k[0] == 0}
    if len(c0) != 1 or next(iter(c0))[1] != 0:
        raise ValueError("leading coefficient is not invertible")
    c = ParamScalar(c0, f.nbeta)
    y = f * PLaurent(f.D, {-lead: c.inverse()}, f.nbeta) - 1
    if not y.is_nilpotent():
        raise ValueError("f is not a unit times p^lead")
    out = PLaurent(f.D, {}, f.nbeta)
    power = PLaurent(f.D, {0: 1}, f.nbeta)
    n = 0
    while True:
        n += 1
        power = power * y
        if power.is_zero():
            break
        out = out + power * Fraction((-1) ** (n + 1), n)
    return c, lead, out


# ---- JSON ----------------------------------------------------------------

def _frac_str(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _pterm_json(k, v):
    d = {f"e_{name}": e for name, e in zip(PARAMS[:4], k[:4])}
    for name, e in zip(PARAMS[4:], k[4:]):
        if e:
            d[f"e_{name}"] = e
    d["value"] = _frac_str(v)
    return d


def series_to_json(f):
    """JSON-ready dict; terms in graded lexicographic order."""
    params = {"beta_mode": "poly" if f.nbeta is None else "trunc"}
    if f.nbeta is not None:
        params["N_beta"] = f.nbeta
    terms = []
    for m in sorted(f.terms, key=lambda m: _order_key(m, f.D)):
        c = f.terms[m]
        terms.append({
            "t": [[k + 1, e] for k, e in enumerate(m[:f.D]) if e],
            "tbar": [[k + 1, e] for k, e in enumerate(m[f.D:]) if e],
            "coeff": [_pterm_json(k, c[k]) for k in sorted(c)],
        })
    return {"D": f.D, "params": params, "terms": terms}


def series_from_json(data):
    D = int(data["D"])
    params = data["params"]
    if params["beta_mode"] not in ("poly", "trunc"):
        raise ValueError(f"unknown beta_mode {params['beta_mode']!r}")
    nbeta = int(params["N_beta"]) if params["beta_mode"] == "trunc" else None
    terms = {}
    for term in data["terms"]:
        mono = [0] * (2 * D)
        for k, e in term["t"]:
            mono[k - 1] = e
        for k, e in term["tbar"]:
            mono[D + k - 1] = e
        coeff = {}
        for ct in term["coeff"]:
            key = tuple(int(ct.get(f"e_{name}", 0)) for name in PARAMS)
            coeff[key] = Fraction(ct["value"])
        terms[tuple(mono)] = coeff
    return TSeries(D, terms, nbeta)


def laurent_to_json(f):
    return {"D": f.D, "lo": f.lo, "hi": f.hi,
            "p_terms": [{"n": n, "series": series_to_json(f.coeffs[n])}
                        for n in sorted(f.coeffs, reverse=True)]}


def laurent_from_json(data):
    coeffs = {int(t["n"]): series_from_json(t["series"]) for t in data["p_terms"]}
    nbeta = next(iter(coeffs.values())).nbeta if coeffs else None
    return PLaurent(int(data["D"]), coeffs, nbeta, data.get("lo"), data.get("hi"))
