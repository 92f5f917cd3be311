"""Lower bounds on the number of facets of an extension of an n-gon.

``t_bound`` is the geometric bound obtained from the Upper Bound Theorem:
the smallest k such that some k-facet polytope can have n vertices, i.e. the
smallest k whose best cyclic-polytope facet count reaches n. ``s_bound`` and
``s_plus_bound`` are the combinatorial (Sperner-type) bounds for comparison.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import binomial, ceil_div_after_sqrt, floor_div_after_sqrt

__all__ = [
    "BoundReport",
    "cyclic_facets",
    "m1",
    "m2",
    "s_max_facets",
    "t_bound",
    "s_bound",
    "s_plus_bound",
    "bound_report",
    "asymptotic_report",
    "LOG_PHI_2",
]

#: log_phi(2), the limit of T(n) / log2(n).
LOG_PHI_2 = math.log(2) / math.log((1 + math.sqrt(5)) / 2)


def cyclic_facets(k: int, d: int) -> int:
    """Number of facets of the cyclic d-polytope with k vertices."""
    if not 2 <= d <= k - 1:
        raise ValueError(f"need 2 <= d <= k-1, got k={k}, d={d}")
    m, odd = divmod(d, 2)
    if odd:
        return 2 * binomial(k - m - 1, m)
    num = k * binomial(k - m, m)
    q, r = divmod(num, k - m)
    assert r == 0, f"k/(k-m)*C(k-m,m) not integral for k={k}, m={m}"
    return q


def _check_k(k: int) -> None:
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")


def m2(k: int) -> int:
    """Smallest maximizer m of k/(k-m) * C(k-m, m) over 1 <= m <= (k-1)/2.

    Closed form ceil((5k - 4 - sqrt(5k^2 - 4)) / 10), evaluated exactly and
    clamped to the admissible range.
    """
    _check_k(k)
    m = ceil_div_after_sqrt(5 * k - 4, 5 * k * k - 4, 10)
    return min(max(m, 1), (k - 1) // 2)


def m1(k: int) -> int:
    """Maximizer of 2 * C(k-1-m, m) among the two Tanny-Zuker candidates.

    The candidates are r and r + 1 with r = floor((k-1)(1 - sqrt5/5)/2);
    ties go to the smaller m, and m = 0 is never returned.
    """
    _check_k(k)
    # (k-1)(1 - sqrt5/5)/2 = (5(k-1) - sqrt(5(k-1)^2)) / 10
    r = floor_div_after_sqrt(5 * (k - 1), 5 * (k - 1) ** 2, 10)
    best, best_val = None, -1
    for cand in (r, r + 1):
        if cand < 1:
            continue
        val = 2 * binomial(k - 1 - cand, cand)
        if val > best_val:
            best, best_val = cand, val
    return best


@lru_cache(maxsize=None)
def s_max_facets(k: int) -> tuple[int, int]:
    """Max facet count over cyclic d-polytopes with k vertices, and its d.

    Ties prefer an even dimension, then the smaller one (k = 9 ties d = 5
    and d = 6). For k != 5 the maximum is also checked against the
    even-dimensional closed form at d = 2*m2(k).
    """
    _check_k(k)
    best, best_d = 0, 0
    for d in range(2, k):
        f = cyclic_facets(k, d)
        if f > best or (f == best and d % 2 == 0 and best_d % 2 == 1):
            best, best_d = f, d
    if k != 5:
        assert best == cyclic_facets(k, 2 * m2(k)), f"even-case maximum fails at k={k}"
    return best, best_d


_t_lock = threading.Lock()
_t_table: list[int] = []  # _t_table[i] = s_max_facets(i + 3)[0]


def _s_table_upto(n: int) -> list[int]:
    with _t_lock:
        while not _t_table or _t_table[-1] < n:
            k = len(_t_table) + 3
            s = s_max_facets(k)[0]
            if _t_table:
                assert s >= _t_table[-1], f"s_k decreased at k={k}"
            _t_table.append(s)
        return _t_table


def _check_n(n: int) -> None:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")


def t_bound(n: int) -> int:
    """Smallest k such that a polytope with k facets can have n vertices."""
    _check_n(n)
    table = _s_table_upto(n)
    lo, hi = 0, len(table) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if table[mid] >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo + 3


def s_bound(n: int) -> int:
    """min{k : n <= C(k, floor(k/2))}."""
    _check_n(n)
    k = 2
    while binomial(k, k // 2) < n:
        k += 1
    return k


def s_plus_threshold(k: int) -> Fraction:
    """(k - floor(k/2)) / (k - 1) * C(k, floor(k/2)) as an exact rational."""
    return Fraction(k - k // 2, k - 1) * binomial(k, k // 2)


def s_plus_bound(n: int) -> int:
    """min{k : n <= (k - floor(k/2)) / (k - 1) * C(k, floor(k/2))}."""
    _check_n(n)
    k = 2
    while s_plus_threshold(k) < n:
        k += 1
    return k


@dataclass(frozen=True)
class BoundReport:
    n: int
    s_bound: int
    s_plus_bound: int
    t_bound: int
    witness_k: int
    witness_d: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s_bound,
            "s_plus": self.s_plus_bound,
            "t": self.t_bound,
            "witness": {"k": self.witness_k, "d": self.witness_d},
        }


def bound_report(n: int) -> BoundReport:
    t = t_bound(n)
    return BoundReport(
        n=n,
        s_bound=s_bound(n),
        s_plus_bound=s_plus_bound(n),
        t_bound=t,
        witness_k=t,
        witness_d=s_max_facets(t)[1],
    )


def asymptotic_report(n_list) -> list[tuple[int, int, float]]:
    """Rows (n, T(n), T(n)/log2(n)); the ratio tends to log_phi(2) ~ 1.4404."""
    rows = []
    for n in n_list:
        t = t_bound(n)
        rows.append((n, t, t / math.log2(n)))
    return rows
