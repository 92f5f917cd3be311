import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrank.boolfact import BooleanFactorization, is_valid, trivial_padding, verify_boolean
from polyrank.slack import is_pattern_zero


def product_support(fact):
    return [[bool(fact.C[i] & fact.D[j]) for j in range(fact.n)] for i in range(fact.n)]


@pytest.mark.parametrize("n", range(3, 40))
def test_padding_valid(n):
    f = trivial_padding(n)
    assert f.k == 2 * n - 3
    assert verify_boolean(f, homogeneous=True) == []
    want = [[not is_pattern_zero(i, j, n) for j in range(n)] for i in range(n)]
    assert product_support(f) == want


def test_padding_rejects_small():
    with pytest.raises(ValueError):
        trivial_padding(2)


@given(st.integers(4, 25), st.data())
def test_single_bit_flip_detected(n, data):
    f = trivial_padding(n)
    which = data.draw(st.sampled_from("CD"))
    row = data.draw(st.integers(0, n - 1))
    bit = data.draw(st.integers(0, f.k - 1))
    C, D = list(f.C), list(f.D)
    target = C if which == "C" else D
    target[row] ^= 1 << bit
    g = BooleanFactorization(n, f.k, tuple(C), tuple(D))
    # a flip always changes a row weight, so the homogeneous check must fail
    assert not is_valid(g, homogeneous=True)


def test_violation_kinds():
    f = trivial_padding(5)
    C = list(f.C)
    C[0] = 0
    bad = verify_boolean(BooleanFactorization(5, f.k, tuple(C), f.D), homogeneous=True)
    kinds = {v.kind for v in bad}
    assert "support" in kinds and "weight_C" in kinds


def test_duplicate_rows_flagged():
    f = trivial_padding(4)
    C = list(f.C)
    C[1] = C[0]
    bad = verify_boolean(BooleanFactorization(4, f.k, tuple(C), f.D))
    assert any(v.kind == "duplicate_C" for v in bad)


def test_dimension_mismatch():
    f = trivial_padding(5)
    with pytest.raises(ValueError):
        verify_boolean(BooleanFactorization(6, f.k, f.C, f.D))
    with pytest.raises(ValueError):
        verify_boolean(BooleanFactorization(5, 3, f.C, f.D))


def test_json_roundtrip(tmp_path):
    f = trivial_padding(7)
    p = tmp_path / "c.json"
    f.save(p)
    data = json.loads(p.read_text())
    assert data["n"] == 7 and data["k"] == 11
    assert all(min(r) >= 1 for r in data["C"] + data["D"] if r)
    assert BooleanFactorization.load(p) == f
    with pytest.raises(ValueError):
        BooleanFactorization.from_json({"n": 1, "k": 2, "C": [[3]], "D": [[1]]})


def test_from_matrices():
    f = trivial_padding(4)
    C, D = f.matrices()
    assert BooleanFactorization.from_matrices(C, D) == f
