"""Brute-force search for affine continued fractions whose limits match known constants.

Every rule ``b0 + a_1/(b_1 + a_2/(b_2 + ...))`` with ``a_n = alpha n + beta`` and
``b_n = gamma n + delta`` and all five coefficients in -L..L is evaluated at a
fixed depth and compared with each entry of the constant table.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .analysis import Destination, _write, format_sig9, log10_error
from .cf_core import AffineRule
from .constants import MAX_DIGITS, CertifiedRational, constant, constant_table, log10_abs
from .errors import GridTooLarge, PrecisionExhausted

MAX_CELLS = 10**7
GUARD_DIGITS = 10
HITS_HEADER = ("b0", "alpha", "beta", "gamma", "delta", "constant", "residual_log10")

Rule = tuple[int, int, int, int, int]


@dataclass(frozen=True)
class ScanGrid:
    bound: int
    depth: int = 200
    match_digits: int = 20

    def __post_init__(self):
        # bound 0 is accepted: its single all-zero rule is rejected per cell
        if self.bound < 0:
            raise ValueError("coefficient bound must be >= 0")
        if self.depth < 10:
            raise ValueError("depth must be >= 10")
        if not 10 <= self.match_digits <= MAX_DIGITS - GUARD_DIGITS:
            raise ValueError(f"match_digits must be in 10..{MAX_DIGITS - GUARD_DIGITS}")

    @property
    def cells(self) -> int:
        return (2 * self.bound + 1) ** 5

    def rules(self) -> Iterable[Rule]:
        span = range(-self.bound, self.bound + 1)
        return itertools.product(span, repeat=5)


@dataclass(frozen=True)
class ConjectureHit:
    rule: Rule
    constant: str
    residual_log10: float
    stability: bool
    depth: int
    match_digits: int


def _advance(rule: Rule, start: int, stop: int, state):
    """Run the recurrence from index start+1 through stop; state is (p_prev, q_prev, p, q)."""
    _, alpha, beta, gamma, delta = rule
    pp, qp, p, q = state
    for n in range(start + 1, stop + 1):
        a = alpha * n + beta
        b = gamma * n + delta
        pp, qp, p, q = p, q, b * p + a * pp, b * q + a * qp
    return pp, qp, p, q


def rule_value(rule: Rule, depth: int) -> Fraction | None:
    """Depth-``depth`` convergent of a rule, or None when a_n or q vanishes."""
    if AffineRule(*rule[1:]).first_zero_numerator(depth) is not None:
        return None
    *_, p, q = _advance(rule, 0, depth, (1, 0, rule[0], 1))
    return Fraction(p, q) if q else None


def _residual_log10(x: Fraction, name: str, digits: int) -> float:
    try:
        return log10_error(x, name, digits)[0]
    except PrecisionExhausted:
        # too close to resolve; fall back to the certified upper bound
        return log10_abs(constant(name, MAX_DIGITS).max_distance(x))


def _check(rule: Rule, grid: ScanGrid, encs: list[tuple[str, CertifiedRational]]) -> list[ConjectureHit]:
    depth, half = grid.depth, grid.depth // 2
    affine = AffineRule(*rule[1:])
    if affine.first_zero_numerator(depth) is not None:
        return []
    scale = 10**grid.match_digits
    state = _advance(rule, 0, half, (1, 0, rule[0], 1))
    p_h, q_h = state[2], state[3]
    state = _advance(rule, half, depth, state)
    p_d, q_d = state[2], state[3]
    if q_h == 0 or q_d == 0:
        return []
    # Cauchy test |r_depth - r_half| <= 10^-m, in integers
    if abs(p_d * q_h - p_h * q_d) * scale > abs(q_d * q_h):
        return []
    tol = Fraction(1, scale)
    r = Fraction(p_d, q_d)
    matched = [(name, enc) for name, enc in encs if enc.max_distance(r) < tol]
    if not matched:
        return []
    # stability: the match must survive doubling the depth
    if affine.first_zero_numerator(2 * depth) is not None:
        return []
    state = _advance(rule, depth, 2 * depth, state)
    if state[3] == 0:
        return []
    r2 = Fraction(state[2], state[3])
    hits = []
    for name, enc in matched:
        if enc.max_distance(r2) < tol:
            res = _residual_log10(r, name, grid.match_digits + GUARD_DIGITS)
            hits.append(ConjectureHit(rule, name, res, True, depth, grid.match_digits))
    return hits


def _check_many(rules: list[Rule], grid: ScanGrid) -> list[ConjectureHit]:
    encs = _enclosures(grid)
    out = []
    for rule in rules:
        out.extend(_check(rule, grid, encs))
    return out


def _enclosures(grid: ScanGrid) -> list[tuple[str, CertifiedRational]]:
    d = grid.match_digits + GUARD_DIGITS
    return [(name, make(d)) for name, make in constant_table()]


def run_scan(grid: ScanGrid, jobs: int = 1, progress=None) -> list[ConjectureHit]:
    """All stable matches in the grid, sorted by rule then constant name.

    ``jobs > 1`` spreads the cells over worker processes; the merged result is
    sorted, so it does not depend on the schedule.  ``progress`` is called with
    the number of finished cells after each batch.
    """
    if grid.cells > MAX_CELLS:
        raise GridTooLarge(grid.cells, MAX_CELLS)
    rules = list(grid.rules())
    size = max(1, len(rules) // (8 * max(jobs, 1)))
    batches = [rules[i:i + size] for i in range(0, len(rules), size)]
    hits: list[ConjectureHit] = []
    done = 0
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for batch, found in zip(batches, pool.map(_check_many, batches, itertools.repeat(grid))):
                hits.extend(found)
                done += len(batch)
                if progress:
                    progress(done)
    else:
        for batch in batches:
            hits.extend(_check_many(batch, grid))
            done += len(batch)
            if progress:
                progress(done)
    unique = {(h.rule, h.constant): h for h in hits}
    return [unique[k] for k in sorted(unique)]


def verify_hit(hit: ConjectureHit, digits: int) -> bool:
    """Re-check a hit at greater depth and precision.

    True when the residual at doubled depth is certifiably below 10^-digits,
    or when residuals at 2x, 4x and 8x the original depth keep shrinking.
    """
    if digits <= hit.match_digits:
        raise ValueError("verification needs more digits than the original match")
    enc = constant(hit.constant, digits + GUARD_DIGITS)
    residuals = []
    for factor in (2, 4, 8):
        r = rule_value(hit.rule, factor * hit.depth)
        if r is None:
            return False
        if enc.max_distance(r) <= Fraction(1, 10**digits):
            return True
        residuals.append(_residual_log10(r, hit.constant, digits + GUARD_DIGITS))
    return all(b < a for a, b in zip([hit.residual_log10] + residuals, residuals))


def emit_hits_csv(hits: Iterable[ConjectureHit], destination: Destination = None) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HITS_HEADER)
    for h in hits:
        w.writerow((*h.rule, h.constant, format_sig9(h.residual_log10)))
    return _write(buf.getvalue().encode("utf-8"), destination)
