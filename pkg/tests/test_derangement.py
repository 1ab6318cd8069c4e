import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from contfrac.constants import e_enclosure
from contfrac.derangement import (
    METHODS,
    derangement_probability,
    factorial,
    gauss_laguerre,
    subfactorial_integral,
    subfactorial_nearest,
    subfactorial_nearest_auto,
    subfactorial_rec1,
    subfactorial_rec2,
    subfactorial_sum,
    subfactorial_table,
)
from contfrac.errors import InsufficientPrecision, TooFewNodes, UnsupportedDegree
from oracles import count_derangements

FIRST_EIGHT = [1, 0, 1, 2, 9, 44, 265, 1854]


def test_factorial():
    assert [factorial(n) for n in (0, 6, 7)] == [1, 720, 5040]


def test_brute_force_counts_match_the_list():
    assert [count_derangements(n) for n in range(8)] == FIRST_EIGHT


@pytest.mark.parametrize("func", [subfactorial_rec1, subfactorial_rec2, subfactorial_sum, subfactorial_nearest_auto])
def test_first_eight(func):
    assert [func(n) for n in range(8)] == FIRST_EIGHT


@pytest.mark.parametrize("n,expected", [(4, 9), (7, 1854), (1, 0)])
def test_rec1(n, expected):
    assert subfactorial_rec1(n) == expected


@pytest.mark.parametrize("n,expected", [(5, 44), (2, 1), (0, 1)])
def test_rec2(n, expected):
    assert subfactorial_rec2(n) == expected


@pytest.mark.parametrize("n,expected", [(3, 2), (6, 265), (0, 1)])
def test_sum(n, expected):
    assert subfactorial_sum(n) == expected


def test_nearest_examples():
    assert subfactorial_nearest(4, e_enclosure(40)) == 9
    assert subfactorial_nearest(0, e_enclosure(40)) == 1
    assert subfactorial_nearest(7, e_enclosure(60)) == 1854


def test_floor_formula_fails_at_zero():
    # floor((0! + 1/2)/e) is 0, which is why n = 0 is special-cased
    assert math.floor(Fraction(3, 2) / e_enclosure(40).value) == 0


def test_nearest_needs_precision():
    with pytest.raises(InsufficientPrecision):
        subfactorial_nearest(30, e_enclosure(5))


def test_tables_agree_up_to_500():
    tables = {m: subfactorial_table(500, m).values for m in ("rec1", "rec2", "sum")}
    assert tables["rec1"] == tables["rec2"] == tables["sum"]
    assert tables["rec1"][:8] == tuple(FIRST_EIGHT)


def test_nearest_table_up_to_100():
    assert subfactorial_table(100, "nearest").values == subfactorial_table(100, "rec1").values


def test_table_methods():
    assert set(METHODS) == {"rec1", "rec2", "sum", "nearest"}
    t = subfactorial_table(1, "rec2")
    assert t.values == (1, 0) and t.method == "rec2"
    with pytest.raises(ValueError):
        subfactorial_table(3, "bogus")


@given(st.integers(0, 120))
def test_pointwise_methods_agree(n):
    assert subfactorial_rec1(n) == subfactorial_rec2(n) == subfactorial_sum(n)


def test_parity_identity():
    prev = subfactorial_rec2(0)
    for n in range(1, 501):
        cur = subfactorial_rec2(n)
        assert cur == n * prev + (-1) ** n
        prev = cur


def test_nearest_integer_bound():
    for n in range(1, 101):
        f = math.factorial(n)
        enc = e_enclosure(len(str(f)) + 5)
        d = subfactorial_rec1(n)
        for end in (enc.lo, enc.hi):
            assert abs(f / end - d) < Fraction(1, 2)


def test_limit_law():
    inv_e = e_enclosure(80).reciprocal()
    prev = None
    for n in range(2, 51):
        ratio = derangement_probability(n)
        # certified bounds on |ratio - 1/e| from the enclosure endpoints
        upper = inv_e.max_distance(ratio)
        lower = inv_e.min_distance(ratio)
        assert upper < Fraction(1, math.factorial(n + 1))
        if prev is not None:
            assert upper < prev
        prev = lower


def test_probability():
    assert derangement_probability(6) == Fraction(53, 144)
    assert derangement_probability(1) == 0
    assert derangement_probability(2) == Fraction(1, 2)


@pytest.mark.parametrize("m", [1, 2, 5, 10, 15, 20, 30])
def test_gauss_laguerre_against_numpy(m):
    xs, ws = gauss_laguerre(m)
    ref_x, ref_w = np.polynomial.laguerre.laggauss(m)
    np.testing.assert_allclose(xs, ref_x, rtol=1e-12)
    np.testing.assert_allclose(ws, ref_w, rtol=1e-10)


def test_gauss_laguerre_integrates_moments():
    # int_0^inf x^k e^-x dx = k!
    xs, ws = gauss_laguerre(8)
    for k in range(16):
        est = math.fsum(w * x**k for x, w in zip(xs, ws))
        assert est == pytest.approx(math.factorial(k), rel=1e-10)


def test_quadrature_examples():
    assert subfactorial_integral(5, 8) == pytest.approx(44, rel=1e-9)
    assert subfactorial_integral(0, 1) == pytest.approx(1, abs=1e-12)
    assert subfactorial_integral(10, 10) == pytest.approx(subfactorial_rec1(10), rel=1e-8)


def test_quadrature_with_nodes_equal_degree():
    for n in range(2, 16):
        assert subfactorial_integral(n, n) == pytest.approx(subfactorial_rec1(n), rel=1e-8)
    assert abs(subfactorial_integral(1, 1)) < 1e-12


def test_quadrature_errors():
    with pytest.raises(TooFewNodes):
        subfactorial_integral(10, 5)
    subfactorial_integral(10, 6)
    with pytest.raises(UnsupportedDegree):
        subfactorial_integral(21, 30)
