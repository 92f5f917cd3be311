import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrank.fields import phi
from polyrank.slack import (
    EXACT_SIZES,
    SlackMatrix,
    is_pattern_zero,
    pentagon_golden_point,
    regular_gon_slack,
    symbolic_slack,
)


def polygon_slack(n):
    # oracle: facet normals and vertex coordinates of the regular n-gon
    verts = [(math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n)) for j in range(n)]
    rows = []
    for i in range(n):
        a, b = verts[(i - 1) % n], verts[i]
        nx, ny = b[1] - a[1], a[0] - b[0]
        rhs = nx * a[0] + ny * a[1]
        rows.append([rhs - nx * v[0] - ny * v[1] for v in verts])
    return np.array(rows)


@pytest.mark.parametrize("n", range(3, 13))
def test_float_slack_matches_geometry(n):
    S = np.array(regular_gon_slack(n).entries)
    G = polygon_slack(n)
    # rows agree up to a positive scale
    for i in range(n):
        j = (i + 1) % n
        assert np.allclose(S[i] / S[i][j], G[i] / G[i][j], atol=1e-9)


@pytest.mark.parametrize("n", range(3, 40))
def test_float_slack_rank_three(n):
    S = regular_gon_slack(n)
    assert S.rank() == 3
    s = S.singular_values()
    assert s[3] < 1e-9 * s[0] if n > 3 else True


@pytest.mark.parametrize("n", EXACT_SIZES)
def test_exact_slack_rank_and_proportional(n):
    E = regular_gon_slack(n, exact=True)
    assert E.rank() == 3
    F = np.array(regular_gon_slack(n).entries)
    Ef = np.array([[float(x) for x in r] for r in E.entries])
    ratio = F[F > 0] / Ef[Ef > 0]
    assert np.allclose(ratio, ratio[0])


def test_hexagon_printed_layout():
    rows = regular_gon_slack(6, exact=True).printed_layout()
    assert [int(x) for x in rows[0]] == [0, 0, 1, 2, 2, 1]
    assert [int(x) for x in rows[5]] == [0, 1, 2, 2, 1, 0]


def test_pentagon_uses_golden_ratio():
    E = regular_gon_slack(5, exact=True)
    assert E.field == "Q(sqrt5)"
    assert phi() in E.entries[0]


@given(st.integers(3, 30), st.integers(0, 29), st.integers(0, 29))
def test_pattern(n, i, j):
    i, j = i % n, j % n
    S = regular_gon_slack(n)
    assert (S.entries[i][j] == 0) == is_pattern_zero(i, j, n)
    assert is_pattern_zero(j, j, n) and is_pattern_zero(j + 1, j, n)


def test_validation():
    with pytest.raises(ValueError):
        regular_gon_slack(2)
    with pytest.raises(ValueError):
        regular_gon_slack(7, exact=True)
    with pytest.raises(ValueError):
        SlackMatrix(3, ((1, 0, 1), (1, 0, 0), (0, 1, 0)), "Q")


def test_symbolic_pentagon_raw_positions():
    S = symbolic_slack(5).printed_layout()
    assert S.var_count == 15
    assert S.entries[0] == ("0", "0", "x11", "x6", "x1")
    assert S.entries[4] == ("0", "x15", "x10", "x5", "0")


def test_symbolic_pentagon_normalized():
    S = symbolic_slack(5, normalized=True).printed_layout()
    assert S.var_count == 6
    assert S.entries == (
        ("0", "0", "1", "x1", "1"),
        ("1", "0", "0", "1", "x2"),
        ("x3", "1", "0", "0", "1"),
        ("1", "x4", "1", "0", "0"),
        ("0", "1", "x5", "x6", "0"),
    )


@pytest.mark.parametrize("n", range(4, 10))
def test_normalized_variable_count(n):
    # the support graph on 2n row/column nodes is connected, a spanning tree fixes 2n - 1 entries
    assert symbolic_slack(n, normalized=True).var_count == n * (n - 2) - (2 * n - 1)


def test_triangle_normalizes_to_ones():
    # the three positive entries form a matching, so all can be scaled to 1
    assert symbolic_slack(3, normalized=True).var_count == 0


def test_golden_point_gives_rank_three():
    from polyrank.fields import exact_rank

    S = symbolic_slack(5, normalized=True)
    M = S.evaluate(pentagon_golden_point())
    assert exact_rank(M) == 3
    with pytest.raises(ValueError):
        S.evaluate([1])
