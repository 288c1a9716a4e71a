"""Partitions, hook lengths, class sizes and symmetric-group characters."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from collections import Counter


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Zero parts are dropped and parts are sorted on construction, so
    ``Partition([1, 0, 3])`` is ``(3, 1)``.
    """

    def __new__(cls, parts=()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, sorted((p for p in parts if p), reverse=True))

    @property
    def size(self):
        return sum(self)

    def multiplicities(self):
        return Counter(self)

    def cells(self):
        """Cells (i, j), 1-based row i and column j."""
        return [(i + 1, j + 1) for i, row in enumerate(self) for j in range(row)]

    def __repr__(self):
        return "[" + ",".join(str(p) for p in self) + "]"

    __str__ = __repr__

    @classmethod
    def parse(cls, text):
        """Parse the text form ``"[3,1,1]"`` (``"[]"`` is the empty partition)."""
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"malformed partition {text!r}")
        body = text[1:-1].strip()
        if not body:
            return cls()
        try:
            parts = [int(x) for x in body.split(",")]
        except ValueError:
            raise ValueError(f"malformed partition {text!r}") from None
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive in {text!r}")
        return cls(parts)


@lru_cache(maxsize=None)
def partitions_of(d):
    """All partitions of ``d`` in reverse lexicographic order."""
    if d < 0:
        raise ValueError("d must be non-negative")

    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(d, d))


def partitions_up_to(d):
    return [lam for n in range(d + 1) for lam in partitions_of(n)]


def transpose(lam):
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for part in lam if part > j) for j in range(lam[0]))


def hook_lengths(lam):
    lam = Partition(lam)
    conj = transpose(lam)
    return [lam[i - 1] - j + conj[j - 1] - i + 1 for i, j in lam.cells()]


@lru_cache(maxsize=None)
def dim_irrep(lam):
    lam = Partition(lam)
    prod = 1
    for h in hook_lengths(lam):
        prod *= h
    return factorial(lam.size) // prod


def kappa(lam):
    """sum_i lam_i (lam_i - 2i + 1); twice the content sum of the diagram."""
    return sum(part * (part - 2 * i + 1) for i, part in enumerate(Partition(lam), start=1))


@dataclass(frozen=True)
class ClassData:
    mu: Partition
    z: int
    class_size: int


def z_mu(mu):
    z = 1
    for part, mult in Partition(mu).multiplicities().items():
        z *= factorial(mult) * part**mult
    return z


def class_data(mu):
    mu = Partition(mu)
    z = z_mu(mu)
    return ClassData(mu, z, factorial(mu.size) // z)


def _beta_set(lam, length):
    # first-column hook lengths, padded to a fixed number of beads
    lam = list(lam) + [0] * (length - len(lam))
    return [lam[i] + length - 1 - i for i in range(length)]


def _from_beta_set(beads):
    beads = sorted(beads, reverse=True)
    n = len(beads)
    return Partition(beads[i] - (n - 1 - i) for i in range(n))


@lru_cache(maxsize=None)
def _mn(lam, mu):
    # Murnaghan-Nakayama: strip a rim hook of length mu[0] in every possible way
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], Partition(mu[1:])
    beads = _beta_set(lam, len(lam))
    occupied = set(beads)
    total = 0
    for b in beads:
        if b - r < 0 or (b - r) in occupied:
            continue
        between = sum(1 for x in beads if b - r < x < b)
        new_beads = [x for x in beads if x != b] + [b - r]
        total += (-1) ** between * _mn(_from_beta_set(new_beads), rest)
    return total


def character(lam, mu):
    """chi_lam evaluated on the class of cycle type mu."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    return _mn(lam, mu)


def f_class(lam, mu):
    """chi_lam(C(mu)) |C(mu)| / dim lam."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    return Fraction(character(lam, mu) * class_data(mu).class_size, dim_irrep(lam))
