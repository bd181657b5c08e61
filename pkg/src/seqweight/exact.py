"""Exact comparisons against expressions involving Euler's number.

``e`` is bracketed by rational partial sums of ``sum 1/j!`` with the tail
bound ``1/(N * N!)``; the bracket is tightened until a comparison is decided.
Because ``e`` is irrational, ``e*p + q`` with rational ``p != 0`` is never
rational, so every comparison terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def e_bounds(terms: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo < e < hi`` using ``terms`` >= 2 terms of the series."""
    if terms < 2:
        raise ValueError("need at least 2 terms")
    lo = Fraction(0)
    fact = 1
    for j in range(terms + 1):
        if j:
            fact *= j
        lo += Fraction(1, fact)
    return lo, lo + Fraction(1, terms * fact)


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing an exact value with ``e*p + q``."""

    sign: int  # +1: value > rhs, -1: value < rhs, 0: equal (only possible when p == 0)
    rhs_lo: Fraction
    rhs_hi: Fraction
    terms: int


def compare_with_e(value, p, q=0, start_terms: int = 20) -> Comparison:
    """Sign of ``value - (e*p + q)`` decided with exact rational brackets."""
    value, p, q = Fraction(value), Fraction(p), Fraction(q)
    if p == 0:
        diff = value - q
        return Comparison((diff > 0) - (diff < 0), q, q, 0)
    terms = start_terms
    while True:
        lo_e, hi_e = e_bounds(terms)
        a, b = p * lo_e + q, p * hi_e + q
        lo, hi = min(a, b), max(a, b)
        if value > hi:
            return Comparison(1, lo, hi, terms)
        if value < lo:
            return Comparison(-1, lo, hi, terms)
        terms *= 2


def to_decimal(x: Fraction, digits: int = 30) -> str:
    """Truncated decimal expansion with ``digits`` places after the point."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = x.numerator // x.denominator
    frac = (x - whole) * 10**digits
    return f"{sign}{whole}.{str(frac.numerator // frac.denominator).rjust(digits, '0')}"


def iroot_ceil(n: int, r: int) -> int:
    """Least integer ``x >= 0`` with ``x**r >= n`` for ``n >= 0``, ``r >= 1``."""
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    if n <= 1 or r == 1:
        return n
    # integer Newton from above converges to floor(n ** (1/r))
    x = 1 << (n.bit_length() // r + 1)
    while True:
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    return x if x**r >= n else x + 1


def least_power_above_e(p, exponent: int, q=0) -> int:
    """Least integer ``k >= 1`` with ``k**exponent > e*p + q``."""
    if exponent < 1:
        raise ValueError("exponent must be >= 1")
    p, q = Fraction(p), Fraction(q)
    lo_e, hi_e = e_bounds(20)
    # float seed, then exact correction in both directions
    k = max(1, int(float(p * hi_e + q) ** (1.0 / exponent)))
    while compare_with_e(k**exponent, p, q).sign <= 0:
        k += 1
    while k > 1 and compare_with_e((k - 1) ** exponent, p, q).sign > 0:
        k -= 1
    return k
