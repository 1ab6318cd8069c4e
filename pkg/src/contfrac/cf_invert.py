"""Recover partial numerators and denominators from a sequence of convergents."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .cf_core import recurrence
from .errors import DegenerateAt


@dataclass(frozen=True)
class InversionResult:
    """Coefficients of the fraction whose convergents are the input (p_n, q_n).

    ``tail[k]`` holds (a_n, b_n) for n = k + 2 exactly as the determinant ratios
    give them, so running the recurrence on it reproduces the input unchanged.
    These need not be integers.  ``normalized_tail`` is the same fraction after
    the smallest positive equivalence transformation that makes every term an
    integer: step n is scaled by ``scales[k]``, which multiplies b_n by c_n and
    a_n by c_{n-1} c_n.  Convergent values are unchanged; the numerators and
    denominators pick up the running product of the scales.
    """

    b0: int
    a1: int
    b1: int
    tail: tuple[tuple[Fraction, Fraction], ...]
    integral: tuple[bool, ...]
    scales: tuple[int, ...]
    normalized_tail: tuple[tuple[int, int], ...]

    @property
    def all_integral(self) -> bool:
        return all(self.integral)

    def pairs(self) -> list[tuple]:
        """All (a_n, b_n) for n >= 1 using the exact, unscaled tail."""
        return [(self.a1, self.b1)] + list(self.tail)

    def normalized_pairs(self) -> list[tuple[int, int]]:
        return [(self.a1, self.b1)] + list(self.normalized_tail)

    def reconstruct(self) -> list[tuple[Fraction, Fraction]]:
        """(p_n, q_n) rebuilt from the unscaled coefficients."""
        return [(Fraction(p), Fraction(q)) for p, q in recurrence(self.b0, self.pairs())]


def _normalize(tail):
    scales, out = [], []
    prev = 1
    for a, b in tail:
        a_scaled = prev * a
        c = lcm(b.denominator, a_scaled.denominator)
        scales.append(c)
        out.append((int(a_scaled * c), int(b * c)))
        prev = c
    return tuple(scales), tuple(out)


def invert(p: Sequence[int], q: Sequence[int]) -> InversionResult:
    """Solve the convergent recurrence for its coefficients.

    Requires q[0] == 1 (the zeroth convergent of any such fraction is b0/1).
    Raises DegenerateAt(n) at the first n whose determinant
    p_{n-1} q_{n-2} - p_{n-2} q_{n-1} is zero.
    """
    if len(p) != len(q):
        raise ValueError(f"p and q differ in length ({len(p)} vs {len(q)})")
    if len(p) < 2:
        raise ValueError("need at least two convergents")
    if q[0] != 1:
        raise ValueError(f"q_0 must be 1, got {q[0]}")
    p = [int(x) for x in p]
    q = [int(x) for x in q]

    b0 = p[0]
    b1 = q[1]
    a1 = p[1] - b0 * q[1]
    tail = []
    for n in range(2, len(p)):
        det = p[n - 1] * q[n - 2] - p[n - 2] * q[n - 1]
        if det == 0:
            raise DegenerateAt(n)
        a = Fraction(p[n - 1] * q[n] - p[n] * q[n - 1], det)
        b = Fraction(p[n] * q[n - 2] - p[n - 2] * q[n], det)
        tail.append((a, b))
    integral = tuple(a.denominator == 1 and b.denominator == 1 for a, b in tail)
    scales, normalized = _normalize(tail)
    return InversionResult(b0, a1, b1, tuple(tail), integral, scales, normalized)


def invert_rationals(r: Sequence[Fraction]) -> InversionResult:
    """Invert from convergent values alone.

    Each value is taken in lowest terms, so common factors that the original
    (p_n, q_n) carried are lost and the recovered coefficients can differ from
    those of the fraction that produced the values, although the values agree.
    """
    r = [Fraction(x) for x in r]
    return invert([x.numerator for x in r], [x.denominator for x in r])
