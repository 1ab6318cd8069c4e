"""Factorials and subfactorials (derangement counts) by several independent routes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .constants import CertifiedRational, e_enclosure
from .errors import InsufficientPrecision, NonIntegralResult, TooFewNodes, UnsupportedDegree

METHODS = ("rec1", "rec2", "sum", "nearest")
MAX_QUADRATURE_DEGREE = 20


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return math.factorial(n)


def subfactorial_rec1(n: int) -> int:
    """!n = n * !(n-1) + (-1)^n from !0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    d = 1
    for k in range(1, n + 1):
        d = k * d + (-1 if k & 1 else 1)
    return d


def subfactorial_rec2(n: int) -> int:
    """!n = (n-1) * (!(n-1) + !(n-2)) from !0 = 1, !1 = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    prev, cur = 1, 0
    for k in range(2, n + 1):
        prev, cur = cur, (k - 1) * (cur + prev)
    return cur


def subfactorial_sum(n: int) -> int:
    """n! * sum_{k<=n} (-1)^k / k!, summed in exact rationals."""
    if n < 0:
        raise ValueError("n must be >= 0")
    total = Fraction(0)
    inv_fact = Fraction(1)
    for k in range(n + 1):
        if k:
            inv_fact /= k
        total += -inv_fact if k & 1 else inv_fact
    result = total * math.factorial(n)
    if result.denominator != 1:
        raise NonIntegralResult(f"alternating sum for n={n} gave {result}")
    return result.numerator


def subfactorial_nearest(n: int, e_ref: CertifiedRational) -> int:
    """Nearest integer to n!/e, i.e. floor(n!/e + 1/2), decided on both enclosure endpoints.

    n = 0 is special-cased: floor((0! + 1/2)/e) = 0, but !0 = 1.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    if e_ref.lo <= 0:
        raise InsufficientPrecision("enclosure of e must be positive")
    f = math.factorial(n)
    half = Fraction(1, 2)
    below = math.floor(f / e_ref.hi + half)
    above = math.floor(f / e_ref.lo + half)
    if below != above:
        raise InsufficientPrecision(
            f"enclosure radius {float(e_ref.radius):.3g} too wide to round {n}!/e"
        )
    return below


def nearest_digits(n: int) -> int:
    return len(str(math.factorial(n))) + 10


def subfactorial_nearest_auto(n: int) -> int:
    """subfactorial_nearest with an enclosure of digit-length(n!) + 10 digits."""
    return subfactorial_nearest(n, e_enclosure(nearest_digits(n)))


@dataclass(frozen=True)
class SubfactorialTable:
    values: tuple[int, ...]
    method: str


def subfactorial_table(n_max: int, method: str) -> SubfactorialTable:
    """!0..!n_max in one sequential pass of the chosen method."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    vals = [1]
    if method == "rec1":
        for k in range(1, n_max + 1):
            vals.append(k * vals[-1] + (-1 if k & 1 else 1))
    elif method == "rec2":
        for k in range(1, n_max + 1):
            vals.append(0 if k == 1 else (k - 1) * (vals[-1] + vals[-2]))
    elif method == "sum":
        partial, inv_fact = Fraction(1), Fraction(1)
        for k in range(1, n_max + 1):
            inv_fact /= k
            partial += -inv_fact if k & 1 else inv_fact
            value = partial * math.factorial(k)
            if value.denominator != 1:
                raise NonIntegralResult(f"alternating sum for n={k} gave {value}")
            vals.append(value.numerator)
    elif method == "nearest":
        e_ref = e_enclosure(nearest_digits(n_max))
        vals.extend(subfactorial_nearest(k, e_ref) for k in range(1, n_max + 1))
    else:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    return SubfactorialTable(tuple(vals), method)


def derangement_probability(n: int) -> Fraction:
    """Chance that a uniformly random permutation of n items has no fixed point."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(subfactorial_rec1(n), math.factorial(n))


def _laguerre(m: int, x: float) -> tuple[float, float]:
    # L_m(x) and L_{m-1}(x) by the three-term recurrence
    prev, cur = 1.0, 1.0 - x
    if m == 0:
        return 1.0, 0.0
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur, prev


@lru_cache(maxsize=None)
def gauss_laguerre(m: int, tol: float = 1e-14, max_iter: int = 100) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Nodes and weights of the m-point rule for int_0^inf f(x) e^-x dx.

    Roots of L_m are found one at a time by Newton's method, seeded with the
    usual asymptotic guesses; the weight at root x is 1 / (x L_m'(x)^2).
    """
    if m < 1:
        raise ValueError("need at least one node")
    nodes, weights = [], []
    z = 0.0
    for i in range(m):
        if i == 0:
            z = 3.0 / (1.0 + 2.4 * m)
        elif i == 1:
            z += 15.0 / (1.0 + 2.5 * m)
        else:
            ai = i - 1
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
        for _ in range(max_iter):
            lm, lm1 = _laguerre(m, z)
            deriv = m * (lm - lm1) / z
            step = lm / deriv
            z -= step
            if abs(step) <= tol * max(1.0, abs(z)):
                break
        else:
            raise RuntimeError(f"Newton iteration for root {i} of L_{m} did not converge")
        lm, lm1 = _laguerre(m, z)
        deriv = m * (lm - lm1) / z
        nodes.append(z)
        weights.append(1.0 / (z * deriv * deriv))
    return tuple(nodes), tuple(weights)


def subfactorial_integral(n: int, nodes: int) -> float:
    """Quadrature estimate of int_0^inf (x-1)^n e^-x dx, which equals !n.

    An m-node rule integrates polynomials up to degree 2m-1 exactly, so the
    only error is floating-point rounding.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAX_QUADRATURE_DEGREE:
        raise UnsupportedDegree(f"n={n} exceeds {MAX_QUADRATURE_DEGREE}")
    need = (n + 2) // 2
    if nodes < need:
        raise TooFewNodes(f"n={n} needs at least {need} nodes, got {nodes}")
    xs, ws = gauss_laguerre(nodes)
    return math.fsum(w * (x - 1.0) ** n for x, w in zip(xs, ws))
