"""Exact integer helpers shared by the bound and search code.

Everything here works on Python ints, so nothing overflows and no float
ever decides a floor or a ceiling.
"""

from __future__ import annotations

import math

__all__ = ["binomial", "isqrt", "ceil_div_after_sqrt", "floor_div_after_sqrt"]


def binomial(n: int, m: int) -> int:
    """C(n, m), zero when m > n."""
    return math.comb(n, m)


def isqrt(n: int) -> int:
    """Exact floor of the square root of a nonnegative integer."""
    return math.isqrt(n)


def _at_least_minus_sqrt(a: int, b: int, c: int, t: int) -> bool:
    # c*t >= a - sqrt(b)  <=>  a - c*t <= sqrt(b)
    lhs = a - c * t
    return lhs <= 0 or b >= lhs * lhs


def ceil_div_after_sqrt(a: int, b: int, c: int) -> int:
    """Return ceil((a - sqrt(b)) / c) using integer comparisons only.

    ``b`` is the radicand and must be nonnegative; ``c`` must be positive.
    """
    if c <= 0:
        raise ValueError("divisor c must be positive")
    if b < 0:
        raise ValueError("radicand b must be nonnegative")
    r = math.isqrt(b)
    # isqrt(b) <= sqrt(b) < isqrt(b) + 1, so the answer is t or t - 1.
    t = -((r - a) // c)
    while _at_least_minus_sqrt(a, b, c, t - 1):
        t -= 1
    return t


def floor_div_after_sqrt(a: int, b: int, c: int) -> int:
    """Return floor((a - sqrt(b)) / c) using integer comparisons only."""
    t = ceil_div_after_sqrt(a, b, c)
    r = math.isqrt(b)
    if r * r == b and (a - r) % c == 0:
        return t
    return t - 1
