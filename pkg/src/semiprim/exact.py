"""Exact comparisons involving square roots and base-2 logarithms.

Nothing here touches floating point.  Square roots are compared by squaring;
quantities built from sqrt(n) and log2(n) are trapped in shrinking rational
intervals whose endpoints come from integer square roots and from comparing
powers of integers with powers of two.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

__all__ = [
    "sqrt_bounds",
    "log2_bounds",
    "decide_le",
    "order_4n",
    "mindeg_holds",
    "chieflen_holds",
    "basesize_holds",
    "order_basesize_holds",
    "basesize_rhs_bounds",
    "order_basesize_rhs_bounds",
    "sqrt_lemma_holds",
    "factorial_power_holds",
    "UndecidedComparison",
]

# precisions tried by decide_le, in bits
PRECISIONS = tuple(8 << i for i in range(9))


class UndecidedComparison(ArithmeticError):
    pass


def sqrt_bounds(n, k):
    """Rational ``[lo, hi]`` around ``sqrt(n)`` of width at most ``2**-k``."""
    scaled = n << (2 * k)
    s = isqrt(scaled)
    den = 1 << k
    if s * s == scaled:
        return Fraction(s, den), Fraction(s, den)
    return Fraction(s, den), Fraction(s + 1, den)


def log2_bounds(m, k):
    """Rational ``[lo, hi]`` around ``log2(m)`` of width at most ``2**-k``.

    Fraction bits come from repeated squaring of ``m / 2^e`` held as an integer
    interval; the working precision grows until every bit is certain.
    """
    if m < 1:
        raise ValueError("logarithm of a non-positive number")
    e = m.bit_length() - 1
    if m == 1 << e:
        return Fraction(e), Fraction(e)
    prec = 2 * k + 16
    while True:
        one = 1 << prec
        lo = (m << prec) >> e
        hi = -((-m << prec) >> e)
        bits = 0
        for _ in range(k):
            lo = (lo * lo) >> prec
            hi = -((-hi * hi) >> prec)
            bits <<= 1
            if lo >= 2 * one:
                bits |= 1
                lo >>= 1
                hi = -((-hi) >> 1)
            elif hi >= 2 * one:
                break
        else:
            den = 1 << k
            return Fraction(e * den + bits, den), Fraction(e * den + bits + 1, den)
        prec *= 2


def decide_le(lhs, rhs):
    """Decide ``lhs <= rhs`` where each side maps a precision ``k`` to ``(lo, hi)``."""
    for k in PRECISIONS:
        llo, lhi = lhs(k)
        rlo, rhi = rhs(k)
        if lhi <= rlo:
            return True
        if llo > rhi:
            return False
        if llo == lhi == rlo == rhi:
            return True
    raise UndecidedComparison("comparison not settled at the maximum precision")


def _const(x):
    x = Fraction(x)
    return lambda k: (x, x)


def order_4n(order, n):
    return order < 4 ** n


def mindeg_holds(m, n):
    """``m >= (sqrt(n) - 1) / 2``, i.e. ``(2m + 1)^2 >= n``."""
    return (2 * m + 1) ** 2 >= n


def chieflen_holds(length, n):
    """``l <= 2 log2 n``, i.e. ``2^l <= n^2``."""
    return 2 ** length <= n * n


def basesize_rhs_bounds(n):
    def f(k):
        slo, shi = sqrt_bounds(n, k)
        llo, lhi = log2_bounds(n, k)
        return 4 * slo * llo, 4 * shi * lhi
    return f


def order_basesize_rhs_bounds(n):
    def f(k):
        slo, shi = sqrt_bounds(n, k)
        llo, lhi = log2_bounds(n, k)
        return 4 * slo * llo * llo, 4 * shi * lhi * lhi
    return f


def basesize_holds(b, n):
    """``b <= 4 sqrt(n) log2(n)``."""
    return decide_le(_const(b), basesize_rhs_bounds(n))


def order_basesize_holds(order, n):
    """``|G| <= 2^(4 sqrt(n) log2(n)^2)``, compared as ``log2|G|`` against the exponent."""
    return decide_le(lambda k: log2_bounds(order, k), order_basesize_rhs_bounds(n))


def sqrt_lemma_holds(a, b):
    """``a(sqrt(b) - 1) >= sqrt(ab) - 1`` for integers ``a >= 2``, ``b >= 1``.

    Dividing by ``sqrt(a) - 1 > 0`` turns the claim into ``sqrt(ab) >= sqrt(a) + 1``,
    which squares to ``ab - a - 1 >= 2 sqrt(a)``.
    """
    if a < 2:
        raise ValueError("need a >= 2")
    t = a * b - a - 1
    return t >= 0 and t * t >= 4 * a


def factorial_power_holds(m, r):
    """``m * r! < 4^(m r)``."""
    f = 1
    for i in range(2, r + 1):
        f *= i
    return m * f < 4 ** (m * r)
