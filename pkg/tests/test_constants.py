import decimal
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contfrac.constants import (
    CertifiedRational,
    constant,
    constant_table,
    decimal_str,
    e_enclosure,
    log10_abs,
)
from contfrac.errors import UnknownTarget, ZeroArgument
from oracles import E_50, decimal_e


def series_oracle(k):
    return sum(Fraction(1, math.factorial(j)) for j in range(k + 1))


def test_digits_one():
    enc = e_enclosure(1)
    assert enc.radius <= Fraction(1, 10)
    assert abs(enc.value - Fraction(E_50)) < Fraction(1, 10)
    assert enc.contains(Fraction(E_50))
    # the series summed through k = 4 is 65/24, tail bound 1/(4! * 4) = 1/96
    assert series_oracle(4) == Fraction(65, 24)


def test_digit_range():
    with pytest.raises(ValueError):
        e_enclosure(0)
    with pytest.raises(ValueError):
        e_enclosure(100_001)


def test_value_is_the_partial_sum_with_tail_radius():
    for d in (1, 5, 30):
        enc = e_enclosure(d)
        k = next(k for k in range(1, 200) if Fraction(1, math.factorial(k) * k) == enc.radius)
        assert enc.value == series_oracle(k)
        assert enc.radius <= Fraction(1, 10**d)


def test_thirty_digits_against_decimal_exp():
    enc = e_enclosure(30)
    ref = Fraction(decimal_e(60))
    assert enc.contains(ref)
    assert abs(enc.value - ref) < Fraction(1, 10**30)


def test_fifty_digits_match_published_expansion():
    enc = e_enclosure(50)
    with decimal.localcontext() as ctx:
        ctx.prec = 80
        mid = decimal.Decimal(enc.value.numerator) / enc.value.denominator
    assert str(mid)[:47] == E_50[:47]


@pytest.mark.parametrize("digits", [200, 2000])
def test_high_precision_against_decimal_exp(digits):
    enc = e_enclosure(digits)
    assert enc.contains(Fraction(decimal_e(digits + 20)))


def test_monotone_refinement():
    encs = [e_enclosure(d) for d in range(1, 60)]
    for a, b in zip(encs, encs[1:]):
        assert b.radius <= a.radius
    assert max(e.lo for e in encs) <= min(e.hi for e in encs)


def test_constant_table_names():
    assert [name for name, _ in constant_table()] == ["e", "e-1", "1/(e-1)", "1/e", "e/(e-1)"]


@pytest.mark.parametrize("name,fn", [
    ("e", lambda e: e),
    ("e-1", lambda e: e - 1),
    ("1/(e-1)", lambda e: 1 / (e - 1)),
    ("1/e", lambda e: 1 / e),
    ("e/(e-1)", lambda e: e / (e - 1)),
])
@pytest.mark.parametrize("digits", [10, 40])
def test_constants_contain_reference(name, fn, digits):
    with decimal.localcontext() as ctx:
        ctx.prec = 100
        ref = Fraction(fn(decimal_e(100)))
    enc = constant(name, digits)
    assert enc.contains(ref)
    assert enc.radius <= Fraction(1, 10**digits)


def test_inv_e_minus_1_value():
    enc = constant("1/(e-1)", 10)
    assert enc.contains(Fraction("0.58197670686932642439"))
    assert enc.lo < Fraction("0.5819767068") + Fraction(1, 10**10)


def test_e_matches_enclosure():
    assert constant("e", 17) == e_enclosure(17)


def test_unknown_constant():
    with pytest.raises(UnknownTarget):
        constant("pi", 10)


def test_reciprocal_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        CertifiedRational(Fraction(0), Fraction(1)).reciprocal()
    with pytest.raises(ValueError):
        CertifiedRational(Fraction(0), Fraction(-1))


def test_log10_abs_examples():
    assert log10_abs(Fraction(1, 1000)) == -3.0
    assert log10_abs(-100) == 2.0
    assert log10_abs(Fraction(8, 3) - e_enclosure(30).value) == pytest.approx(-1.2872227069860429, abs=1e-9)
    with pytest.raises(ZeroArgument):
        log10_abs(0)


def test_log10_abs_huge():
    x = Fraction(3**5000, 7**4000)
    with decimal.localcontext() as ctx:
        ctx.prec = 50
        ref = float(5000 * decimal.Decimal(3).log10() - 4000 * decimal.Decimal(7).log10())
    assert log10_abs(x) == pytest.approx(ref, abs=1e-9)


nonzero = st.fractions(max_denominator=10**30).filter(bool) | st.builds(
    Fraction, st.integers(1, 10**400), st.integers(1, 10**400))


@given(nonzero, nonzero)
def test_log10_abs_is_additive(a, b):
    assert log10_abs(a * b) == pytest.approx(log10_abs(a) + log10_abs(b), abs=2e-9)


def test_decimal_str():
    assert decimal_str(Fraction(8, 3), 5) == "2.66667"
    assert decimal_str(Fraction(-1, 8), 2) == "-0.12"
    assert decimal_str(Fraction(5, 2), 0) == "2"
    assert decimal_str(Fraction(1, 3), 3) == "0.333"
