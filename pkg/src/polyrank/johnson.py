"""Johnson graphs J(k, floor(k/2)) on bitmask subsets, and factorizing cycles.

A subset of {1..k} is an int whose bit j stands for label j+1. Two m-subsets
are adjacent when they share m-1 labels; the edge {S, T} is colored by the
complement of S | T. A cycle C_1..C_n is factorizing when every C_i avoids
the unions C_l | C_{l+1} of the edges it is not on. Such a cycle is exactly a
homogeneous boolean factorization of the n-gon slack support, with C_i the
rows of C and the edge colors the rows of D.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

from .boolfact import BooleanFactorization

__all__ = [
    "MAX_K",
    "subset",
    "labels",
    "johnson_vertices",
    "johnson_neighbors",
    "adjacent",
    "edge_color",
    "FactorizingCycle",
    "CycleViolation",
    "is_factorizing_cycle",
    "cycle_to_factorization",
    "factorization_to_cycle",
]

MAX_K = 32


def subset(labels_: Sequence[int]) -> int:
    """Bitmask of a collection of 1-based labels."""
    mask = 0
    for x in labels_:
        if not 1 <= x <= MAX_K:
            raise ValueError(f"label {x} outside 1..{MAX_K}")
        mask |= 1 << (x - 1)
    return mask


def labels(mask: int) -> list[int]:
    return [j + 1 for j in range(mask.bit_length()) if (mask >> j) & 1]


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in 1..{MAX_K}, got {k}")


def johnson_vertices(k: int, m: int | None = None) -> list[int]:
    """All m-subsets of {1..k} in increasing bitmask order (m defaults to k//2)."""
    _check_k(k)
    if m is None:
        m = k // 2
    return sorted(sum(1 << x for x in c) for c in combinations(range(k), m))


def johnson_neighbors(a: int, k: int) -> list[int]:
    """Neighbours of a in J(k, |a|): swap one member for one non-member."""
    _check_k(k)
    full = (1 << k) - 1
    out = []
    for x in range(k):
        if not (a >> x) & 1:
            continue
        for y in range(k):
            if (full & ~a) >> y & 1:
                out.append((a & ~(1 << x)) | (1 << y))
    return sorted(out)


def adjacent(a: int, b: int, k: int) -> bool:
    _check_k(k)
    m = a.bit_count()
    if b.bit_count() != m:
        raise ValueError("adjacency is only defined between subsets of equal size")
    return (a & b).bit_count() == m - 1


def edge_color(a: int, b: int, k: int) -> int:
    """Complement of a | b in {1..k}."""
    if not adjacent(a, b, k):
        raise ValueError("edge_color needs an edge of the Johnson graph")
    return ((1 << k) - 1) & ~(a | b)


class CycleViolation(NamedTuple):
    kind: str  # "adjacency", "rainbow", "containment"
    i: int
    j: int
    detail: str


@dataclass(frozen=True)
class FactorizingCycle:
    """Ordered cycle C_1..C_n of floor(k/2)-subsets; validity checked separately."""

    k: int
    vertices: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def colors(self) -> tuple[int, ...]:
        full = (1 << self.k) - 1
        v = self.vertices
        return tuple(full & ~(v[l] | v[(l + 1) % len(v)]) for l in range(len(v)))

    def canonical(self) -> "FactorizingCycle":
        """Rotation/reflection with the smallest vertex first and smaller second."""
        v = list(self.vertices)
        n = len(v)
        s = v.index(min(v))
        fwd = [v[(s + t) % n] for t in range(n)]
        back = [v[(s - t) % n] for t in range(n)]
        return FactorizingCycle(self.k, tuple(min(fwd, back)))

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "vertices": [labels(x) for x in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "FactorizingCycle":
        return cls(int(data["k"]), tuple(subset(x) for x in data["vertices"]))


def is_factorizing_cycle(cycle: FactorizingCycle) -> CycleViolation | None:
    """Return the first violation found, or None for a factorizing cycle.

    Order of checks: adjacency of consecutive vertices, distinct colors,
    then C_i not inside C_l | C_{l+1} for every i off edge l.
    """
    k, v = cycle.k, cycle.vertices
    _check_k(k)
    n = len(v)
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    m = k // 2
    for i, x in enumerate(v):
        if x.bit_count() != m or x >> k:
            raise ValueError(f"vertex {i} is not a {m}-subset of 1..{k}")
    for l in range(n):
        a, b = v[l], v[(l + 1) % n]
        if (a & b).bit_count() != m - 1:
            return CycleViolation("adjacency", l, (l + 1) % n, "consecutive vertices not adjacent")
    colors = cycle.colors
    first: dict[int, int] = {}
    for l, c in enumerate(colors):
        if c in first:
            return CycleViolation("rainbow", first[c], l, "two edges share a color")
        first[c] = l
    for l in range(n):
        union = v[l] | v[(l + 1) % n]
        for i in range(n):
            if i == l or i == (l + 1) % n:
                continue
            if v[i] & ~union == 0:
                return CycleViolation("containment", i, l, "vertex lies inside an edge union")
    return None


def cycle_to_factorization(cycle: FactorizingCycle) -> BooleanFactorization:
    """Rows of C are the cycle vertices, rows of D the edge colors."""
    bad = is_factorizing_cycle(cycle)
    if bad is not None:
        raise ValueError(f"not a factorizing cycle: {bad}")
    return BooleanFactorization(cycle.n, cycle.k, tuple(cycle.vertices), cycle.colors)


def factorization_to_cycle(fact: BooleanFactorization) -> FactorizingCycle:
    """Read the rows of C as a cycle in J(k, floor(k/2)); no validation."""
    return FactorizingCycle(fact.k, tuple(fact.C))
