from math import comb

import pytest

from polyrank import _kernel as K
from polyrank import cyclesearch as cs
from polyrank.boolfact import verify_boolean
from polyrank.cyclesearch import (
    brute_force_cycle,
    brute_force_lengths,
    default_budget,
    find_cycle,
    hom_boolean_rank,
    max_cycle_survey,
)
from polyrank.johnson import cycle_to_factorization, is_factorizing_cycle


def _certify(out):
    assert out.found
    assert is_factorizing_cycle(out.cycle) is None
    f = cycle_to_factorization(out.cycle)
    assert verify_boolean(f, homogeneous=True) == []
    assert f.n == out.n and f.k == out.k


@pytest.mark.parametrize(
    "k,n,verdict",
    [
        (3, 3, "found"),
        (4, 4, "found"),
        (5, 6, "found"),
        (5, 7, "exhausted_none"),
        (6, 9, "found"),
        (6, 10, "exhausted_none"),
        (7, 10, "found"),
        (7, 21, "found"),
        (7, 22, "exhausted_none"),
        (7, 23, "exhausted_none"),
    ],
)
def test_known_verdicts(k, n, verdict):
    out = find_cycle(k, n)
    assert out.verdict == verdict
    if out.found:
        _certify(out)


def test_more_vertices_than_graph():
    out = find_cycle(3, 4)
    assert out.exhausted and out.nodes_explored == 0


def test_argument_checks():
    with pytest.raises(ValueError):
        find_cycle(2, 5)
    with pytest.raises(ValueError):
        find_cycle(33, 5)
    with pytest.raises(ValueError):
        find_cycle(5, 2)
    with pytest.raises(ValueError):
        find_cycle(5, 5, node_budget=0)


def test_deterministic_node_counts():
    a = find_cycle(7, 22)
    b = find_cycle(7, 22)
    assert (a.verdict, a.nodes_explored) == (b.verdict, b.nodes_explored)
    c = find_cycle(7, 18)
    d = find_cycle(7, 18)
    assert c.cycle == d.cycle and c.nodes_explored == d.nodes_explored


@pytest.mark.parametrize("k,n", [(7, 22), (7, 20), (6, 10), (7, 15)])
def test_partition_independent_of_jobs(k, n):
    one = find_cycle(k, n, jobs=1, split_depth=5)
    two = find_cycle(k, n, jobs=2, split_depth=5)
    assert (one.verdict, one.nodes_explored) == (two.verdict, two.nodes_explored)
    assert one.cycle == two.cycle
    assert one.verdict == find_cycle(k, n).verdict


def test_budget_abort_is_not_exhaustion():
    out = find_cycle(7, 22, node_budget=50)
    assert out.verdict == "aborted" and out.limit == "nodes"
    assert out.nodes_explored <= 50
    out = find_cycle(7, 22, node_budget=50, split_depth=4)
    assert out.verdict == "aborted"


def test_time_limit_abort():
    out = find_cycle(8, 35, time_limit=0.01)
    assert out.verdict == "aborted" and out.limit == "time"


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("POLYRANK_BUDGET", "77")
    assert default_budget() == 77
    assert find_cycle(7, 22).verdict == "aborted"
    monkeypatch.setenv("POLYRANK_BUDGET", "lots")
    with pytest.raises(ValueError):
        default_budget()
    monkeypatch.delenv("POLYRANK_BUDGET")
    assert default_budget() == 10**9


def _plain(k, n, necklace, classes):
    s = cs._Search(k, n, cs._root_prefix(k), necklace=necklace, classes=classes)
    status = s.step(10**9)
    assert status in (K.FOUND, K.EXHAUSTED)
    return status == K.FOUND, s.nodes


@pytest.mark.parametrize("k", [4, 5, 6, 7])
def test_pruning_rules_do_not_change_verdicts(k):
    # each symmetry rule on its own and together must agree with neither
    for n in range(3, comb(k, k // 2) + 1):
        base, base_nodes = _plain(k, n, False, False)
        for necklace, classes in [(True, False), (False, True), (True, True)]:
            got, nodes = _plain(k, n, necklace, classes)
            assert got == base, (k, n, necklace, classes)
            if not base:
                assert nodes <= base_nodes


def test_brute_force_agrees_k5():
    brute = brute_force_lengths(5)
    fast = {n: find_cycle(5, n).found for n in range(3, 11)}
    assert brute == fast
    assert {n for n, ok in brute.items() if ok} == {3, 4, 5, 6}


def test_brute_force_agrees_k6():
    for n in range(3, 11):
        assert (brute_force_cycle(6, n) is not None) == find_cycle(6, n).found


def test_brute_force_cycles_are_valid():
    for n in (3, 5, 6):
        assert is_factorizing_cycle(brute_force_cycle(5, n)) is None


def test_survey_k3_and_k5():
    assert [(e.n, e.verdict) for e in max_cycle_survey(3)] == [(3, "found")]
    got = {e.n: e.verdict for e in max_cycle_survey(5)}
    assert got[5] == got[6] == "found" and got[7] == "exhausted_none"


def test_survey_k7_lengths():
    got = {e.n: e.verdict for e in max_cycle_survey(7)}
    assert all(got[n] == "found" for n in range(10, 22))
    assert all(got[n] == "exhausted_none" for n in range(22, 36))


@pytest.mark.parametrize("n,rank", [(3, 3), (4, 4), (5, 5), (6, 5), (7, 6), (8, 6), (9, 6), (10, 7)])
def test_rank_small(n, rank):
    res = hom_boolean_rank(n)
    assert res.exact and res.lower == rank
    assert verify_boolean(res.certificate, homogeneous=True) == []
    assert res.certificate.k == rank


def test_rank_interval_when_aborted():
    res = hom_boolean_rank(22, k_max=8, node_budget=100)
    assert not res.exact
    assert res.lower <= 8 and res.upper >= res.lower
    assert verify_boolean(res.certificate, homogeneous=True) == []


def test_rank_falls_back_to_padding():
    res = hom_boolean_rank(10, k_max=6)
    assert res.lower == 7 and res.upper == 17
    assert res.certificate.k == 17
