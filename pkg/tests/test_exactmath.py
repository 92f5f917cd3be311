import math
from decimal import Decimal, getcontext

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polyrank.exactmath import binomial, ceil_div_after_sqrt, floor_div_after_sqrt, isqrt


@pytest.mark.parametrize("n,m,want", [(5, 2, 10), (4, 0, 1), (6, 3, 20), (3, 5, 0)])
def test_binomial_examples(n, m, want):
    assert binomial(n, m) == want


@pytest.mark.parametrize("n,want", [(401, 20), (0, 0), (176, 13), (1, 1), (10**40, 10**20)])
def test_isqrt_examples(n, want):
    assert isqrt(n) == want


@pytest.mark.parametrize("a,b,c,want", [(41, 401, 10, 3), (26, 176, 10, 2), (10, 100, 10, 0)])
def test_ceil_div_after_sqrt_examples(a, b, c, want):
    assert ceil_div_after_sqrt(a, b, c) == want


def test_ceil_div_rejects_zero_divisor():
    with pytest.raises(ValueError):
        ceil_div_after_sqrt(1, 4, 0)
    with pytest.raises(ValueError):
        ceil_div_after_sqrt(1, -4, 3)


@given(st.integers(min_value=0, max_value=10**6))
def test_isqrt_brackets(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) ** 2


@given(st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=60))
def test_pascal_rule(n, m):
    assert binomial(n, m) == binomial(n - 1, m) + binomial(n - 1, m - 1)


def _hp(a, b, c):
    getcontext().prec = 60
    return (Decimal(a) - Decimal(b).sqrt()) / Decimal(c)


@settings(max_examples=10_000)
@given(
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=0, max_value=10**12),
    st.integers(min_value=1, max_value=1000),
)
def test_ceil_matches_high_precision(a, b, c):
    x = _hp(a, b, c)
    frac = x - x.to_integral_value(rounding="ROUND_FLOOR")
    assume(Decimal("1e-6") < frac < 1 - Decimal("1e-6"))
    assert ceil_div_after_sqrt(a, b, c) == int(x.to_integral_value(rounding="ROUND_CEILING"))
    assert floor_div_after_sqrt(a, b, c) == int(x.to_integral_value(rounding="ROUND_FLOOR"))


@given(st.integers(min_value=0, max_value=10**4), st.integers(min_value=1, max_value=50), st.integers(min_value=-100, max_value=100))
def test_exact_when_root_is_integral(r, c, q):
    # a - sqrt(r^2) = c*q exactly
    a = c * q + r
    assert ceil_div_after_sqrt(a, r * r, c) == q
    assert floor_div_after_sqrt(a, r * r, c) == q


def test_near_perfect_square_radicands():
    # 5k^2 - 4 is a perfect square at Fibonacci k; float rounding is risky there
    for k in range(3, 3000):
        got = ceil_div_after_sqrt(5 * k - 4, 5 * k * k - 4, 10)
        r = math.isqrt(5 * k * k - 4)
        exact = r * r == 5 * k * k - 4
        if exact and (5 * k - 4 - r) % 10 == 0:
            assert got == (5 * k - 4 - r) // 10
        else:
            assert got == _hp(5 * k - 4, 5 * k * k - 4, 10).to_integral_value(rounding="ROUND_CEILING")
