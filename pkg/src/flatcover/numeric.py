"""Interval arithmetic helpers for rigorous bound comparisons.

All logarithms in the package go through :func:`log2` or :func:`ln` so the
base is never ambiguous.  Values are mpmath intervals; ``a`` certainly lies
below ``b`` when ``upper(a) <= lower(b)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from mpmath import iv, mp, mpf

PREC = 256
iv.prec = PREC

Interval = type(iv.mpf(1))


def ival(x: int | Fraction | Interval) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    return iv.mpf(x)


def ln(x: int | Fraction | Interval) -> Interval:
    return iv.log(ival(x))


_LN2 = iv.log(iv.mpf(2))


def log2(x: int | Fraction | Interval) -> Interval:
    return ln(x) / _LN2


E = iv.e


def lower(x: Interval) -> mpf:
    with mp.workprec(PREC):
        return mpf(x.a)


def upper(x: Interval) -> mpf:
    with mp.workprec(PREC):
        return mpf(x.b)


def certainly_le(a: Interval | int | Fraction, b: Interval | int | Fraction) -> bool:
    return upper(ival(a)) <= lower(ival(b))


def midpoint(x: Interval) -> float:
    return float(mpf(x.mid))


def ceil_interval(x: Interval) -> int:
    """Exact ceiling of a real known to lie in a narrow interval that contains no integer."""
    lo, hi = lower(x), upper(x)
    fl_lo, fl_hi = int(mp.floor(lo)), int(mp.floor(hi))
    if fl_lo != fl_hi or lo == fl_lo:
        raise ArithmeticError(f"interval [{lo}, {hi}] is too close to an integer to round")
    return fl_lo + 1


def ceil_sigma_n(n_vertices: int, d: int, lam: Fraction) -> int:
    """``ceil(N ln(d+1) / (d+lam))``; never an integer for d >= 1 because ln(d+1) is irrational."""
    return ceil_interval(ival(n_vertices) * ln(d + 1) / ival(Fraction(d) + lam))


def sigma_float(d: int, lam: Fraction) -> float:
    return midpoint(ln(d + 1) / ival(Fraction(d) + lam))


def binomial_prefix_sum(n: int, k: int) -> int:
    """``sum_{i=0}^{k} C(n, i)`` exactly."""
    return sum(comb(n, i) for i in range(0, min(k, n) + 1))
