import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrank.bounds import (
    LOG_PHI_2,
    asymptotic_report,
    bound_report,
    cyclic_facets,
    m1,
    m2,
    s_bound,
    s_max_facets,
    s_plus_bound,
    t_bound,
)


def gale_facets(k, d):
    """Facets of the cyclic polytope C(k, d) by Gale's evenness condition."""
    count = 0
    for S in combinations(range(k), d):
        members = set(S)
        ok = True
        outside = [i for i in range(k) if i not in members]
        for i, j in zip(outside, outside[1:]):
            if sum(1 for x in range(i + 1, j) if x in members) % 2:
                ok = False
                break
        count += ok
    return count


def brute_s_max(k):
    best, best_d = 0, 0
    for d in range(2, k):
        f = cyclic_facets(k, d)
        if f > best or (f == best and d % 2 == 0 and best_d % 2 == 1):
            best, best_d = f, d
    return best, best_d


def brute_m2(k):
    vals = {m: Fraction(k, k - m) * math.comb(k - m, m) for m in range(1, (k - 1) // 2 + 1)}
    top = max(vals.values())
    return min(m for m, v in vals.items() if v == top)


def brute_m1(k):
    vals = {m: 2 * math.comb(k - m - 1, m) for m in range(1, (k - 2) // 2 + 1)}
    top = max(vals.values())
    return min(m for m, v in vals.items() if v == top)


@pytest.mark.parametrize("k,d,want", [(6, 2, 6), (5, 3, 6), (8, 4, 20)])
def test_cyclic_facets_examples(k, d, want):
    assert cyclic_facets(k, d) == want


@pytest.mark.parametrize("k", range(3, 12))
def test_cyclic_facets_match_gale_evenness(k):
    for d in range(2, k):
        assert cyclic_facets(k, d) == gale_facets(k, d)


def test_cyclic_facets_range():
    with pytest.raises(ValueError):
        cyclic_facets(5, 5)
    with pytest.raises(ValueError):
        cyclic_facets(5, 1)


@pytest.mark.parametrize("k,want", [(9, 3), (6, 2), (5, 1)])
def test_m2_examples(k, want):
    assert m2(k) == want


@pytest.mark.parametrize("k,want", [(3, 1), (5, 1), (9, 2)])
def test_m1_examples(k, want):
    assert m1(k) == want


@pytest.mark.parametrize("k", range(3, 201))
def test_m2_matches_brute_force(k):
    assert m2(k) == brute_m2(k)


@pytest.mark.parametrize("k", range(4, 201))
def test_m1_matches_brute_force(k):
    assert m1(k) == brute_m1(k)


def test_m_reject_small_k():
    with pytest.raises(ValueError):
        m2(2)
    with pytest.raises(ValueError):
        m1(2)


@pytest.mark.parametrize("k,want", [(5, (6, 3)), (6, (9, 4)), (9, (30, 6))])
def test_s_max_examples(k, want):
    assert s_max_facets(k) == want


def test_s_max_brute_force_and_even_dimension():
    for k in range(3, 61):
        f, d = s_max_facets(k)
        assert (f, d) == brute_s_max(k)
        if k == 5:
            # the odd dimension strictly wins only here
            assert d == 3 and cyclic_facets(5, 2 * m2(5)) < f
        else:
            assert d == 2 * m2(k)
            assert f >= max((cyclic_facets(k, dd) for dd in range(3, k, 2)), default=0)


@pytest.mark.parametrize("n,want", [(9, 6), (3, 3), (22, 9), (6, 5), (7, 6)])
def test_t_examples(n, want):
    assert t_bound(n) == want


def test_t_is_min_k():
    for n in range(3, 400):
        t = t_bound(n)
        assert s_max_facets(t)[0] >= n
        if t > 3:
            assert s_max_facets(t - 1)[0] < n


@pytest.mark.parametrize("n,s,sp", [(9, 5, 6), (3, 3, 3), (6, 4, 5), (35, 7, 8)])
def test_s_examples(n, s, sp):
    assert s_bound(n) == s
    assert s_plus_bound(n) == sp


def test_reject_small_n():
    for f in (t_bound, s_bound, s_plus_bound):
        with pytest.raises(ValueError):
            f(2)


@given(st.integers(min_value=3, max_value=5000))
def test_report_invariants(n):
    r = bound_report(n)
    assert math.log2(n) <= r.s_bound <= r.s_plus_bound
    assert r.t_bound >= math.ceil(math.log2(n)) + 1
    assert r.t_bound >= r.s_bound
    nxt = bound_report(n + 1)
    assert nxt.s_bound >= r.s_bound and nxt.s_plus_bound >= r.s_plus_bound and nxt.t_bound >= r.t_bound


def test_report_json():
    assert bound_report(9).to_dict() == {"n": 9, "s": 5, "s_plus": 6, "t": 6, "witness": {"k": 6, "d": 4}}


def test_asymptotic_ratio_decreasing():
    rows = asymptotic_report([2**e for e in range(10, 21, 2)])
    ratios = [r for _, _, r in rows]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert all(r > LOG_PHI_2 for r in ratios)
    assert [t for _, t, _ in rows] == [17, 20, 23, 26, 29, 32]
