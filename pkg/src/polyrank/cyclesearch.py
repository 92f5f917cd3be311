"""Search for factorizing cycles and the homogeneous boolean rank of n-gons.

The heavy lifting is done by the compiled kernel in ``_kernel``; this module
owns budgets, time limits, prefix partitioning across worker processes and
the bookkeeping that turns raw kernel results into outcomes.

Node counts are defined by the serial search. A partitioned run reports the
count the serial run would have reported, so verdicts and counts do not
depend on ``jobs`` or on scheduling.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable

import numpy as np

from . import _kernel as K
from .boolfact import BooleanFactorization, trivial_padding
from .bounds import s_bound
from .johnson import FactorizingCycle, cycle_to_factorization, is_factorizing_cycle, johnson_vertices

__all__ = [
    "DEFAULT_BUDGET",
    "SearchOutcome",
    "RankResult",
    "SurveyEntry",
    "default_budget",
    "find_cycle",
    "hom_boolean_rank",
    "max_cycle_survey",
    "brute_force_cycle",
    "brute_force_lengths",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
SLICE = 1 << 21  # nodes per kernel call between clock checks
DEFAULT_SPLIT = 7  # prefix length handed to workers


def default_budget() -> int:
    """Node budget from POLYRANK_BUDGET, else 10^9."""
    raw = os.environ.get("POLYRANK_BUDGET")
    if raw:
        try:
            val = int(raw)
        except ValueError:
            raise ValueError(f"POLYRANK_BUDGET must be an integer, got {raw!r}") from None
        if val <= 0:
            raise ValueError("POLYRANK_BUDGET must be positive")
        return val
    return DEFAULT_BUDGET


@dataclass
class SearchOutcome:
    k: int
    n: int
    verdict: str  # "found", "exhausted_none", "aborted"
    nodes_explored: int
    wall_time: float
    cycle: FactorizingCycle | None = None
    limit: str | None = None  # "nodes" or "time" when aborted

    @property
    def found(self) -> bool:
        return self.verdict == "found"

    @property
    def exhausted(self) -> bool:
        return self.verdict == "exhausted_none"

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "n": self.n,
            "verdict": self.verdict,
            "nodes": self.nodes_explored,
            "wall_time": round(self.wall_time, 3),
        }
        if self.limit:
            out["limit"] = self.limit
        if self.cycle is not None:
            out["cycle"] = self.cycle.to_json()["vertices"]
        return out


# --- kernel plumbing -------------------------------------------------------


@lru_cache(maxsize=None)
def _graph(k: int):
    return K.build_graph(k)


_RANK = np.arange(K.NTYPES, dtype=np.int64)


def _type_rank() -> np.ndarray:
    # any fixed order of the turn types is sound
    return _RANK


class _Search:
    """One resumable kernel search rooted at a prefix of vertex indices."""

    def __init__(
        self, k: int, n: int, prefix, order: int = 1, emit_len: int = 0,
        necklace: bool = True, classes: bool = True,
    ):
        verts, _, nbr, clq = _graph(k)
        self.k, self.n = k, n
        self.verts, self.nbr, self.clq = verts, nbr, clq
        self.rank = _type_rank()
        self.order = order
        self.emit_len = emit_len
        self.necklace = necklace
        self.classes = classes
        W = clq.shape[2]
        deg = nbr.shape[1]
        rows = max(n, len(prefix)) + 1
        self.path = np.zeros(rows, np.int64)
        self.F = np.zeros((rows, W), np.uint64)
        self.vis = np.zeros((rows, W), np.uint64)
        self.cls = np.zeros((rows, k), np.int64)
        self.cand = np.zeros((rows, deg), np.int64)
        self.ncand = np.zeros(rows, np.int64)
        self.pos = np.zeros(rows, np.int64)
        self.rem = np.zeros(rows, np.int64)
        self.add = np.zeros(rows, np.int64)
        self.typ = np.zeros(rows, np.int64)
        self.per = np.zeros(rows, np.int64)
        self.meta = np.zeros(3, np.int64)
        ok = K.init_state(
            np.asarray(prefix, np.int64), n, k, verts, nbr, clq, self.rank, self.path, self.F,
            self.vis, self.cls, self.ncand, self.rem, self.add, self.typ, self.per, self.meta,
        )
        if not ok:
            raise ValueError("prefix is not a walk in the Johnson graph")

    @property
    def nodes(self) -> int:
        return int(self.meta[K.M_NODES])

    def step(self, quota: int) -> int:
        return int(K.advance(
            self.n, self.k, self.verts, self.nbr, self.clq, self.rank, self.order, self.classes, self.necklace,
            self.emit_len, self.path, self.F, self.vis, self.cls, self.cand, self.ncand, self.pos,
            self.rem, self.add, self.typ, self.per, self.meta, quota,
        ))

    def cycle(self) -> FactorizingCycle:
        return FactorizingCycle(self.k, tuple(int(self.verts[v]) for v in self.path[: self.n]))

    def prefix(self, length: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.path[:length])


def _root_prefix(k: int) -> tuple[int, int]:
    m = k // 2
    c1 = (1 << m) - 1
    c2 = (c1 & ~(1 << (m - 1))) | (1 << m)
    index = _graph(k)[1]
    return index[c1], index[c2]


def _drive(search, budget: int, deadline: float | None, progress=None):
    """Run until a verdict, an emission, or a limit. Returns (status, limit)."""
    t0 = time.monotonic()
    while True:
        left = budget - search.nodes
        if left <= 0:
            return K.PAUSED, "nodes"
        status = search.step(min(SLICE, left))
        if status != K.PAUSED:
            return status, None
        if progress is not None:
            progress(search.nodes, time.monotonic() - t0)
        if deadline is not None and time.monotonic() >= deadline:
            return K.PAUSED, "time"


class _Portfolio:
    """Two searches from one prefix, run in alternating halves of each quota.

    The first prunes non-canonical rotations and decides exhaustion quickly;
    the second skips that pruning, which tends to find cycles much sooner.
    Either one may report a cycle or exhaustion; both are sound.
    """

    def __init__(self, k: int, n: int, prefix):
        self.parts = [_Search(k, n, prefix), _Search(k, n, prefix, necklace=False)]
        self.winner = self.parts[0]

    @property
    def nodes(self) -> int:
        return sum(p.nodes for p in self.parts)

    def step(self, quota: int) -> int:
        half = max(1, quota // 2)
        for i, part in enumerate(self.parts):
            q = half if i == 0 else max(1, quota - half)
            status = part.step(q)
            if status != K.PAUSED:
                self.winner = part
                return status
        return K.PAUSED

    def cycle(self) -> FactorizingCycle:
        return self.winner.cycle()

    def prefix(self, length: int) -> tuple[int, ...]:
        return self.winner.prefix(length)


def _subtask(k: int, n: int, prefix: tuple[int, ...], budget: int, deadline: float | None):
    search = _Portfolio(k, n, prefix)
    status, limit = _drive(search, budget, deadline)
    path = search.prefix(n) if status == K.FOUND else None
    return status, search.nodes, limit, path


def _check_args(k: int, n: int) -> None:
    if not 3 <= k <= 32:
        raise ValueError(f"k must be in 3..32, got {k}")
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")


def find_cycle(
    k: int,
    n: int,
    node_budget: int | None = None,
    time_limit: float | None = None,
    jobs: int = 1,
    split_depth: int | None = None,
    progress: Callable[[int, float], None] | None = None,
) -> SearchOutcome:
    """Depth-first search for a length-n factorizing cycle in J(k, k // 2).

    ``split_depth`` (or ``jobs > 1``) partitions the tree at that path length
    into independent subtasks; verdict and node count match the serial run.
    Budget or time exhaustion gives verdict "aborted", never a nonexistence
    claim.
    """
    _check_args(k, n)
    budget = default_budget() if node_budget is None else int(node_budget)
    if budget <= 0:
        raise ValueError("node budget must be positive")
    t0 = time.monotonic()
    deadline = None if time_limit is None else t0 + time_limit
    N = comb(k, k // 2)

    def done(verdict, nodes, cycle=None, limit=None):
        if cycle is not None:
            bad = is_factorizing_cycle(cycle)
            if bad is not None:  # would be a kernel bug; never report it as found
                raise RuntimeError(f"search produced an invalid cycle: {bad}")
        return SearchOutcome(k, n, verdict, nodes, time.monotonic() - t0, cycle, limit)

    if n > N:
        return done("exhausted_none", 0)
    if split_depth is None and jobs > 1:
        split_depth = DEFAULT_SPLIT
    root = _root_prefix(k)
    if not split_depth or split_depth <= 2 or split_depth >= n:
        search = _Portfolio(k, n, root)
        status, limit = _drive(search, budget, deadline, progress)
        if status == K.FOUND:
            return done("found", search.nodes, search.cycle())
        if status == K.EXHAUSTED:
            return done("exhausted_none", search.nodes)
        return done("aborted", search.nodes, limit=limit)
    return _partitioned(k, n, root, split_depth, budget, deadline, max(1, jobs), done)


def _partitioned(k, n, root, split_depth, budget, deadline, jobs, done):
    enum = _Search(k, n, root, emit_len=split_depth)
    prefixes: list[tuple[int, ...]] = []
    marks: list[int] = []  # enumeration nodes spent before each emission
    while True:
        status, limit = _drive(enum, budget, deadline)
        if status == K.EMIT:
            prefixes.append(enum.prefix(split_depth))
            marks.append(enum.nodes)
            continue
        if status == K.FOUND:
            return done("found", enum.nodes, enum.cycle())
        if status == K.PAUSED:
            return done("aborted", enum.nodes, limit=limit)
        break
    enum_total = enum.nodes
    log.info("k=%d n=%d: %d subtasks at depth %d", k, n, len(prefixes), split_depth)
    sub_budget = budget - enum_total
    results: list = [None] * len(prefixes)
    if jobs == 1:
        spent = 0
        for i, p in enumerate(prefixes):
            results[i] = _subtask(k, n, p, sub_budget - spent, deadline)
            spent += results[i][1]
            if results[i][0] in (K.FOUND, K.PAUSED):
                break
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_subtask, k, n, p, sub_budget, deadline) for p in prefixes]
            for i, f in enumerate(futs):
                results[i] = f.result()
                if results[i][0] == K.FOUND:
                    for g in futs[i + 1:]:
                        g.cancel()
                    break
    # replay in serial order so the count is the serial one
    spent = 0
    for i, res in enumerate(results):
        if res is None:
            break
        status, nodes, limit, path = res
        if marks[i] + spent + nodes > budget or (status == K.PAUSED and limit == "nodes"):
            return done("aborted", min(budget, marks[i] + spent + nodes), limit="nodes")
        spent += nodes
        if status == K.PAUSED:
            return done("aborted", marks[i] + spent, limit=limit)
        if status == K.FOUND:
            verts = _graph(k)[0]
            cyc = FactorizingCycle(k, tuple(int(verts[v]) for v in path))
            return done("found", marks[i] + spent, cyc)
    return done("exhausted_none", enum_total + spent)


# --- rank and surveys --------------------------------------------------------


@dataclass
class RankResult:
    n: int
    lower: int
    upper: int
    certificate: BooleanFactorization | None
    outcomes: list[SearchOutcome] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        out = {"n": self.n, "lower": self.lower, "upper": self.upper, "exact": self.exact}
        out["searches"] = [o.to_dict() for o in self.outcomes]
        return out


def hom_boolean_rank(
    n: int,
    k_max: int | None = None,
    node_budget: int | None = None,
    time_limit: float | None = None,
    jobs: int = 1,
) -> RankResult:
    """Smallest k with a length-n factorizing cycle, as an honest interval.

    Searches k = max(3, S(n)), S(n) + 1, ... up to k_max (default 2n - 3,
    capped at 32). The lower end is the first k whose search was not
    exhausted; the upper end is the first k with a cycle, falling back to
    the padding construction of size 2n - 3.
    """
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    start = max(3, s_bound(n))
    pad = 2 * n - 3
    if k_max is None:
        k_max = min(pad, 32)
    k_max = min(k_max, 32)
    outcomes: list[SearchOutcome] = []
    lower = None
    for k in range(start, k_max + 1):
        out = find_cycle(k, n, node_budget, time_limit, jobs)
        outcomes.append(out)
        log.info("n=%d k=%d: %s (%d nodes)", n, k, out.verdict, out.nodes_explored)
        if not out.exhausted and lower is None:
            lower = k
        if out.found:
            return RankResult(n, lower, k, cycle_to_factorization(out.cycle), outcomes)
    if lower is None:
        lower = max(start, k_max + 1)
    if pad >= lower:
        return RankResult(n, lower, pad, trivial_padding(n), outcomes)
    # every k up to k_max exhausted yet the padding sits below: cannot happen
    raise RuntimeError("searches contradict the padding construction")


@dataclass
class SurveyEntry:
    n: int
    verdict: str
    nodes: int


def max_cycle_survey(
    k: int,
    n_range: range | None = None,
    node_budget: int | None = None,
    time_limit: float | None = None,
    jobs: int = 1,
) -> list[SurveyEntry]:
    """Verdict for every cycle length n (default 3..C(k, k // 2)) at fixed k."""
    if n_range is None:
        n_range = range(3, comb(k, k // 2) + 1)
    out = []
    for n in n_range:
        res = find_cycle(k, n, node_budget, time_limit, jobs)
        out.append(SurveyEntry(n, res.verdict, res.nodes_explored))
    return out


# --- brute force oracle --------------------------------------------------------


def brute_force_cycle(k: int, n: int) -> FactorizingCycle | None:
    """Plain search with no symmetry reduction, for cross-checking.

    Tries every start vertex and every neighbour; the only pruning is the
    defining condition applied to the partial path (a vertex inside the union
    of a non-incident edge, or a repeated color). Closing cycles are checked
    with ``is_factorizing_cycle``.
    """
    _check_args(k, n)
    m = k // 2
    verts = johnson_vertices(k)
    full = (1 << k) - 1
    nbrs = {a: [b for b in verts if (a & b).bit_count() == m - 1] for a in verts}

    def ok_step(path, b):
        # new vertex b after path; new edge is (path[-1], b)
        a = path[-1]
        union = a | b
        for x in path[:-1]:
            if x & ~union == 0:
                return False
        for i in range(len(path) - 1):
            if b & ~(path[i] | path[i + 1]) == 0:
                return False
        color = full & ~union
        for i in range(len(path) - 1):
            if full & ~(path[i] | path[i + 1]) == color:
                return False
        return True

    def rec(path):
        if len(path) == n:
            cyc = FactorizingCycle(k, tuple(path))
            if path[0] in nbrs[path[-1]] and is_factorizing_cycle(cyc) is None:
                return cyc
            return None
        for b in nbrs[path[-1]]:
            if b in path or not ok_step(path, b):
                continue
            path.append(b)
            got = rec(path)
            path.pop()
            if got is not None:
                return got
        return None

    for a in verts:
        got = rec([a])
        if got is not None:
            return got
    return None


def brute_force_lengths(k: int, n_max: int | None = None) -> dict[int, bool]:
    """Achievable cycle lengths at k by the unsymmetrized search."""
    top = comb(k, k // 2) if n_max is None else n_max
    return {n: brute_force_cycle(k, n) is not None for n in range(3, top + 1)}
