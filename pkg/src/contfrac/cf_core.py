"""Generalized continued fractions and their convergents.

A fraction is ``b0 + a1/(b1 + a2/(b2 + ...))``.  Integers are Python ``int``
and rationals are ``fractions.Fraction``; both are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import InsufficientTerms, NotSimple, UndefinedConvergent, ZeroPartialNumerator

# Leading term b0 of each named expansion.
FAMILY_B0 = {
    "euler": 2,
    "derangement-raw": 1,
    "derangement-elegant": 2,
    "inv-e-minus-1": 0,
    "power-ratio": 1,
}
FAMILIES = tuple(FAMILY_B0)


@dataclass(frozen=True)
class GCFTerm:
    a: int
    b: int
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"term index must be >= 1, got {self.index}")
        if self.a == 0:
            raise ZeroPartialNumerator(self.index)


@dataclass(frozen=True)
class ExplicitList:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))


@dataclass(frozen=True)
class Family:
    name: str

    def __post_init__(self):
        if self.name not in FAMILY_B0:
            raise ValueError(f"unknown family {self.name!r}; choose from {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class AffineRule:
    """a_n = alpha*n + beta, b_n = gamma*n + delta for n >= 1."""

    alpha: int
    beta: int
    gamma: int
    delta: int

    def a(self, n: int) -> int:
        return self.alpha * n + self.beta

    def b(self, n: int) -> int:
        return self.gamma * n + self.delta

    def first_zero_numerator(self, n_max: int) -> int | None:
        """Smallest n in 1..n_max with a_n == 0, or None."""
        if self.alpha == 0:
            return 1 if self.beta == 0 and n_max >= 1 else None
        n, rem = divmod(-self.beta, self.alpha)
        if rem == 0 and 1 <= n <= n_max:
            return n
        return None


Source = Union[ExplicitList, Family, AffineRule]


@dataclass(frozen=True)
class GCFSpec:
    b0: int
    source: Source

    def __post_init__(self):
        if isinstance(self.source, Family) and self.b0 != FAMILY_B0[self.source.name]:
            raise ValueError(
                f"family {self.source.name} has b0={FAMILY_B0[self.source.name]}, got {self.b0}"
            )

    @classmethod
    def family(cls, name: str) -> GCFSpec:
        return cls(FAMILY_B0.get(name, 0), Family(name))

    @classmethod
    def explicit(cls, b0: int, pairs: Iterable[tuple[int, int]]) -> GCFSpec:
        return cls(b0, ExplicitList(tuple(pairs)))

    @classmethod
    def affine(cls, b0: int, alpha: int, beta: int, gamma: int, delta: int) -> GCFSpec:
        return cls(b0, AffineRule(alpha, beta, gamma, delta))


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int


def _family_pair(name: str, k: int) -> tuple[int, int]:
    if name == "euler":
        return 1, (2 * (k + 1) // 3 if k % 3 == 2 else 1)
    if name == "derangement-raw":
        return (1, 0) if k == 1 else (k - 1, k - 1)
    if name == "derangement-elegant":
        return k + 1, k + 1
    if name == "inv-e-minus-1":
        return k, k
    raise AssertionError(name)


def _power_ratio_pairs(n_terms: int) -> list[tuple[int, int]]:
    # Coefficients come from inverting the convergents (n+1)^n / n^n and
    # clearing denominators with the minimal equivalence transformation.
    from .cf_invert import invert

    if n_terms == 0:
        return []
    p, q = power_ratio_sequences(n_terms)
    res = invert(p, q)
    return [(res.a1, res.b1)] + [(int(a), int(b)) for a, b in res.normalized_tail]


def power_ratio_sequences(n_max: int) -> tuple[list[int], list[int]]:
    """(p_n, q_n) = ((n+1)^n, n^n) for n = 0..n_max."""
    return [(n + 1) ** n for n in range(n_max + 1)], [n**n for n in range(n_max + 1)]


def terms(spec: GCFSpec, n_terms: int) -> list[GCFTerm]:
    """The first ``n_terms`` partial numerator/denominator pairs, indexed from 1."""
    if n_terms < 0:
        raise ValueError("n_terms must be >= 0")
    src = spec.source
    if isinstance(src, ExplicitList):
        if len(src.pairs) < n_terms:
            raise InsufficientTerms(f"explicit list has {len(src.pairs)} terms, {n_terms} requested")
        pairs = src.pairs[:n_terms]
    elif isinstance(src, AffineRule):
        zero = src.first_zero_numerator(n_terms)
        if zero is not None:
            raise ZeroPartialNumerator(zero)
        pairs = [(src.a(k), src.b(k)) for k in range(1, n_terms + 1)]
    elif src.name == "power-ratio":
        pairs = _power_ratio_pairs(n_terms)
    else:
        pairs = [_family_pair(src.name, k) for k in range(1, n_terms + 1)]
    return [GCFTerm(a, b, k) for k, (a, b) in enumerate(pairs, start=1)]


def recurrence(b0, pairs: Iterable[tuple]) -> Iterator[tuple]:
    """Yield (p_k, q_k) for k = 0, 1, ... from the three-term recurrence.

    Works for any exact number type, so rational coefficients are accepted.
    """
    p_prev, q_prev = 1, 0
    p, q = b0, 1
    yield p, q
    for a, b in pairs:
        p_prev, q_prev, p, q = p, q, b * p + a * p_prev, b * q + a * q_prev
        yield p, q


def convergents(spec: GCFSpec, n_max: int) -> list[Convergent]:
    """Convergents with indices 0..n_max, unreduced.

    The power-ratio family is defined by its convergents ((n+1)^n, n^n); running
    the recurrence on its integer coefficients gives the same ratios but scaled
    numerators and denominators.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if isinstance(spec.source, Family) and spec.source.name == "power-ratio":
        p, q = power_ratio_sequences(n_max)
        return [Convergent(n, p[n], q[n]) for n in range(n_max + 1)]
    pairs = ((t.a, t.b) for t in terms(spec, n_max))
    return [Convergent(n, p, q) for n, (p, q) in enumerate(recurrence(spec.b0, pairs))]


def evaluate(c: Convergent) -> Fraction:
    if c.q == 0:
        raise UndefinedConvergent(c.index)
    return Fraction(c.p, c.q)


def simple_to_gcf(coeffs: Sequence[int]) -> GCFSpec:
    """[c0; c1, c2, ...] as a GCFSpec with unit partial numerators."""
    if not coeffs:
        raise NotSimple("a simple continued fraction needs at least one coefficient")
    for k, c in enumerate(coeffs[1:], start=1):
        if c < 1:
            raise NotSimple(f"coefficient {k} is {c}; simple fractions need positive terms after the first")
    return GCFSpec.explicit(coeffs[0], [(1, c) for c in coeffs[1:]])
