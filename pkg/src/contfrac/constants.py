"""Certified rational enclosures of e and friends, and exact-to-float helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import UnknownTarget, ZeroArgument

MAX_DIGITS = 100_000
LOG10_2 = math.log10(2)


@dataclass(frozen=True)
class CertifiedRational:
    """The real number lies in [value - radius, value + radius]."""

    value: Fraction
    radius: Fraction

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be non-negative")

    @property
    def lo(self) -> Fraction:
        return self.value - self.radius

    @property
    def hi(self) -> Fraction:
        return self.value + self.radius

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def shift(self, k) -> CertifiedRational:
        return CertifiedRational(self.value + k, self.radius)

    def reciprocal(self) -> CertifiedRational:
        lo, hi = self.lo, self.hi
        if lo <= 0 <= hi:
            raise ZeroDivisionError("enclosure contains zero")
        a, b = sorted((1 / lo, 1 / hi))
        return CertifiedRational((a + b) / 2, (b - a) / 2)

    def max_distance(self, x) -> Fraction:
        """Largest |x - y| over y in the enclosure; an upper bound on the true distance."""
        return max(abs(x - self.lo), abs(x - self.hi))

    def min_distance(self, x) -> Fraction:
        """Smallest |x - y| over y in the enclosure; a lower bound on the true distance."""
        if self.contains(x):
            return Fraction(0)
        return min(abs(x - self.lo), abs(x - self.hi))


def _split(a: int, b: int) -> tuple[int, int]:
    # sum_{k=a+1}^{b} 1/((a+1)(a+2)...k) == P/Q with Q = (a+1)...b
    if b - a == 1:
        return 1, b
    m = (a + b) // 2
    p1, q1 = _split(a, m)
    p2, q2 = _split(m, b)
    return p1 * q2 + p2, q1 * q2


def _terms_needed(digits: int) -> int:
    # smallest K >= 1 with K! * K >= 10**digits, i.e. tail bound 1/(K! K) <= 10**-digits
    target = 10**digits
    k, fact = 1, 1
    while fact * k < target:
        k += 1
        fact *= k
    return k


@lru_cache(maxsize=64)
def e_enclosure(digits: int) -> CertifiedRational:
    """Partial sum of 1/k! for k <= K with the proven tail bound 1/(K! K) as radius."""
    if not 1 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must be in 1..{MAX_DIGITS}, got {digits}")
    k = _terms_needed(digits)
    p, q = _split(0, k)
    return CertifiedRational(1 + Fraction(p, q), Fraction(1, q * k))


def _e(d):
    return e_enclosure(d)


def _e_minus_1(d):
    return e_enclosure(d).shift(-1)


def _inv_e_minus_1(d):
    return e_enclosure(d + 2).shift(-1).reciprocal()


def _inv_e(d):
    return e_enclosure(d + 2).reciprocal()


def _e_over_e_minus_1(d):
    return _inv_e_minus_1(d).shift(1)


_TABLE: tuple[tuple[str, Callable[[int], CertifiedRational]], ...] = (
    ("e", _e),
    ("e-1", _e_minus_1),
    ("1/(e-1)", _inv_e_minus_1),
    ("1/e", _inv_e),
    ("e/(e-1)", _e_over_e_minus_1),
)


def constant_table() -> list[tuple[str, Callable[[int], CertifiedRational]]]:
    """(name, producer) pairs; each producer maps a digit count to an enclosure of radius <= 10^-digits."""
    return list(_TABLE)


def constant(name: str, digits: int) -> CertifiedRational:
    for key, make in _TABLE:
        if key == name:
            return make(digits)
    raise UnknownTarget(f"unknown constant {name!r}; choose from {', '.join(k for k, _ in _TABLE)}")


def _log10_int(n: int) -> float:
    shift = max(n.bit_length() - 64, 0)
    return math.log10(n >> shift) + shift * LOG10_2


def log10_abs(r) -> float:
    """log10 |r| for an exact rational, without converting r itself to float."""
    r = Fraction(r)
    if r == 0:
        raise ZeroArgument("log10 of zero")
    return _log10_int(abs(r.numerator)) - _log10_int(r.denominator)


def decimal_str(r, places: int) -> str:
    """Render an exact rational with ``places`` decimals, rounding half to even."""
    r = Fraction(r)
    n = round(r * 10**places)
    sign = "-" if n < 0 else ""
    digits = str(abs(n)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
