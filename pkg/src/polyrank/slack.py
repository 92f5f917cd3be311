"""Slack matrices of regular n-gons: numeric, exact and symbolic.

Layout convention used everywhere in the package: rows are facets, columns
are vertices, and facet i is the edge joining vertices i-1 and i (indices
mod n). Hence column l has its two zeros in rows l and l+1, which is the
pattern the boolean factorization code keys off.

The matrices printed in the literature for the pentagon and hexagon label
facet i as the edge joining vertices i and i+1 instead; ``printed_layout``
rotates the rows by one to get that picture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fields import QuadraticNumber, exact_rank, phi

__all__ = [
    "is_pattern_zero",
    "zero_pattern",
    "SlackMatrix",
    "SymbolicSlackMatrix",
    "regular_gon_slack",
    "symbolic_slack",
    "EXACT_SIZES",
]

EXACT_SIZES = (3, 4, 5, 6)


def is_pattern_zero(i: int, j: int, n: int) -> bool:
    """True iff entry (i, j) of an n-gon slack matrix is zero (0-based)."""
    return i % n == j % n or i % n == (j + 1) % n


def zero_pattern(n: int) -> tuple[tuple[bool, ...], ...]:
    return tuple(tuple(is_pattern_zero(i, j, n) for j in range(n)) for i in range(n))


def _rotate_rows(rows: Sequence, shift: int) -> tuple:
    n = len(rows)
    return tuple(rows[(i + shift) % n] for i in range(n))


@dataclass(frozen=True)
class SlackMatrix:
    """Slack matrix of an n-gon with ``field`` one of "Q", "Q(sqrt5)", "float"."""

    n: int
    entries: tuple[tuple, ...]
    field: str

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError("slack matrix must be n x n")
        for i in range(self.n):
            for j in range(self.n):
                x = self.entries[i][j]
                if is_pattern_zero(i, j, self.n):
                    if x != 0:
                        raise ValueError(f"entry ({i},{j}) must be a pattern zero")
                elif not x > 0:
                    raise ValueError(f"entry ({i},{j}) must be positive")

    @property
    def exact(self) -> bool:
        return self.field != "float"

    @property
    def zero_pattern(self) -> tuple[tuple[bool, ...], ...]:
        return zero_pattern(self.n)

    def rank(self, tol: float = 1e-9) -> int:
        if self.exact:
            return exact_rank(self.entries)
        s = np.linalg.svd(np.array(self.entries, dtype=float), compute_uv=False)
        return int(np.sum(s > tol * s[0]))

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(np.array([[float(x) for x in r] for r in self.entries]), compute_uv=False)

    def printed_layout(self) -> tuple[tuple, ...]:
        """Rows rotated so that row i has its zeros in columns i and i+1."""
        return _rotate_rows(self.entries, 1)

    def to_json(self) -> dict:
        if self.exact:
            rows = [[str(x) for x in r] for r in self.entries]
        else:
            rows = [[float(x) for x in r] for r in self.entries]
        return {"n": self.n, "field": self.field, "entries": rows}


def regular_gon_slack(n: int, exact: bool = False) -> SlackMatrix:
    """Slack matrix of the regular n-gon.

    Float mode uses vertices at angles 2*pi*j/n and unit outward normals, so
    S[i][j] = cos(pi/n) - cos((2(j - i) + 1) pi / n). Exact mode (n = 3..6)
    rescales by the smallest positive value, giving entries in Q or Q(sqrt 5).
    """
    if n < 3:
        raise ValueError(f"a polygon needs n >= 3, got {n}")
    if not exact:
        c = math.cos(math.pi / n)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if is_pattern_zero(i, j, n):
                    row.append(0.0)
                else:
                    row.append(c - math.cos((2 * (j - i) + 1) * math.pi / n))
            rows.append(tuple(row))
        return SlackMatrix(n, tuple(rows), "float")
    if n not in EXACT_SIZES:
        raise ValueError(f"exact slack matrices are available for n in {EXACT_SIZES}")
    # values along a facet row, starting at the first vertex after the facet
    if n == 3:
        profile = [Fraction(1)]
    elif n == 4:
        profile = [Fraction(1), Fraction(1)]
    elif n == 5:
        profile = [Fraction(1), phi(), Fraction(1)]
    else:
        profile = [Fraction(1), Fraction(2), Fraction(2), Fraction(1)]
    field = "Q(sqrt5)" if n == 5 else "Q"
    rows = []
    for i in range(n):
        row = [Fraction(0)] * n
        # facet i contains vertices i-1 and i; positives start at vertex i+1
        for s, val in enumerate(profile):
            row[(i + 1 + s) % n] = val
        rows.append(tuple(row))
    return SlackMatrix(n, tuple(rows), field)


@dataclass(frozen=True)
class SymbolicSlackMatrix:
    """Slack matrix support with symbolic entries "0", "1" or "x<idx>"."""

    n: int
    entries: tuple[tuple[str, ...], ...]
    var_count: int

    def transposed(self) -> "SymbolicSlackMatrix":
        return SymbolicSlackMatrix(self.n, tuple(zip(*self.entries)), self.var_count)

    def printed_layout(self) -> "SymbolicSlackMatrix":
        return SymbolicSlackMatrix(self.n, _rotate_rows(self.entries, 1), self.var_count)

    def variable_positions(self) -> dict[int, tuple[int, int]]:
        pos = {}
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.startswith("x"):
                    pos[int(e[1:])] = (i, j)
        return pos

    def evaluate(self, values: Sequence) -> list[list]:
        """Substitute values[v-1] for x_v; fixed ones become 1."""
        if len(values) != self.var_count:
            raise ValueError(f"expected {self.var_count} values, got {len(values)}")
        out = []
        for row in self.entries:
            r = []
            for e in row:
                if e == "0":
                    r.append(0)
                elif e == "1":
                    r.append(1)
                else:
                    r.append(values[int(e[1:]) - 1])
            out.append(r)
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "var_count": self.var_count, "entries": [list(r) for r in self.entries]}


class _Forest:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _fixed_by_scaling(n: int) -> set[tuple[int, int]]:
    """Positions (printed layout) that row/column scaling can set to one.

    Entries are offered in a fixed priority order and kept when they join two
    components of the row-column graph, so the kept set is a spanning forest
    and can always be scaled to ones simultaneously.
    """
    order = [(i, (i + 2) % n) for i in range(n)]
    order += [(i, (i - 1) % n) for i in range(n)]
    for g in range(2, n - 2):
        order += [(i, (i - g) % n) for i in range(n)]
    forest = _Forest(2 * n)
    fixed = set()
    for i, j in order:
        if (i, j) in fixed:
            continue
        if forest.union(i, n + j):
            fixed.add((i, j))
    return fixed


def symbolic_slack(n: int, normalized: bool = False) -> SymbolicSlackMatrix:
    """Symbolic slack matrix of an n-gon.

    Raw numbering follows the printed pentagon: in printed layout x_1..x_n sit
    just left of the zero pair, the next n variables one step further left,
    and so on. The normalized matrix fixes a spanning forest of entries to 1
    and numbers the remaining entries row by row (printed layout), which for
    n = 5 gives the six-variable pentagon matrix.
    """
    if n < 3:
        raise ValueError(f"a polygon needs n >= 3, got {n}")
    grid = [["0"] * n for _ in range(n)]
    if not normalized:
        for g in range(1, n - 1):
            for i in range(n):
                grid[i][(i - g) % n] = f"x{(g - 1) * n + i + 1}"
        count = n * (n - 2)
    else:
        fixed = _fixed_by_scaling(n)
        count = 0
        for i in range(n):
            for j in range(n):
                if j in (i, (i + 1) % n):
                    continue
                if (i, j) in fixed:
                    grid[i][j] = "1"
                else:
                    count += 1
                    grid[i][j] = f"x{count}"
    printed = tuple(tuple(r) for r in grid)
    # printed row i is facet i+1 in the package layout
    return SymbolicSlackMatrix(n, _rotate_rows(printed, -1), count)


def pentagon_golden_point() -> list[QuadraticNumber]:
    """Values of the normalized pentagon variables giving the regular pentagon."""
    p = phi()
    return [p, p, p, p, p, QuadraticNumber(1, 0, 5)]
