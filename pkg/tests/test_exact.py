from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from seqweight.exact import compare_with_e, e_bounds, iroot_ceil, least_power_above_e, to_decimal


def test_e_bounds_bracket():
    mpmath.mp.dps = 120
    for t in (2, 5, 20, 40):
        lo, hi = e_bounds(t)
        assert mpmath.mpf(lo.numerator) / lo.denominator < mpmath.e < mpmath.mpf(hi.numerator) / hi.denominator
    lo, hi = e_bounds(40)
    assert hi - lo < Fraction(1, 10**40)


def test_compare_examples():
    assert compare_with_e(243, 61).sign == 1      # 3^5 vs 61e
    assert compare_with_e(81, 41).sign == -1      # 3^4 vs 41e
    assert compare_with_e(512, 145).sign == 1     # 2^9 vs 145e
    assert compare_with_e(5, 0, 5).sign == 0


def test_to_decimal():
    assert to_decimal(Fraction(1, 3), 5) == "0.33333"
    assert to_decimal(Fraction(-7, 2), 2) == "-3.50"


@given(st.integers(0, 10**30), st.integers(1, 12))
def test_iroot_ceil(n, r):
    x = iroot_ceil(n, r)
    assert x**r >= n
    assert x == 0 or (x - 1) ** r < n


@pytest.mark.parametrize("p,a,k", [(180, 4, 5), (56, 2, 13), (180, 5, 4)])
def test_least_power_examples(p, a, k):
    assert least_power_above_e(p, a) == k


@given(st.integers(1, 10**6), st.integers(1, 9))
def test_least_power_against_mpmath(p, a):
    mpmath.mp.dps = 60
    k = least_power_above_e(p, a)
    rhs = mpmath.e * p
    assert mpmath.mpf(k) ** a > rhs
    assert k == 1 or mpmath.mpf(k - 1) ** a < rhs
