"""Boolean factorizations of n-gon slack supports and their verifier.

A factorization stores each row of C and D as an int bitmask over the k
inner columns (bit j is column j+1). The verifier only looks at the
abstract zero pattern, so no arithmetic tolerance is involved.

Row distinctness is checked as well. It is not part of the definition but
follows from a correct support for n >= 4: two equal rows of C would give
two identical rows of the product, and no two facets of a polygon share
both of their vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np


__all__ = [
    "BooleanFactorization",
    "Violation",
    "verify_boolean",
    "is_valid",
    "trivial_padding",
]


class Violation(NamedTuple):
    kind: str  # "support", "weight_C", "weight_D", "duplicate_C", "duplicate_D"
    row: int
    col: int | None
    detail: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "row": self.row, "col": self.col, "detail": self.detail}


def _rows_from_indices(rows, k: int) -> tuple[int, ...]:
    out = []
    for r in rows:
        mask = 0
        for c in r:
            if not 1 <= c <= k:
                raise ValueError(f"column index {c} outside 1..{k}")
            mask |= 1 << (c - 1)
        out.append(mask)
    return tuple(out)


@dataclass(frozen=True)
class BooleanFactorization:
    n: int
    k: int
    C: tuple[int, ...]
    D: tuple[int, ...]

    @classmethod
    def from_matrices(cls, C, D) -> "BooleanFactorization":
        """Build from two 0/1 matrices given as nested sequences."""
        if len(C) != len(D):
            raise ValueError("C and D must have the same number of rows")
        k = len(C[0]) if C else 0
        rows = []
        for M in (C, D):
            masks = []
            for r in M:
                if len(r) != k:
                    raise ValueError("ragged 0/1 matrix")
                masks.append(sum(1 << j for j, x in enumerate(r) if x))
            rows.append(tuple(masks))
        return cls(len(C), k, rows[0], rows[1])

    def matrices(self) -> tuple[list[list[int]], list[list[int]]]:
        def expand(rows):
            return [[(r >> j) & 1 for j in range(self.k)] for r in rows]

        return expand(self.C), expand(self.D)

    def to_json(self) -> dict:
        def idx(rows):
            return [[j + 1 for j in range(self.k) if (r >> j) & 1] for r in rows]

        return {"n": self.n, "k": self.k, "C": idx(self.C), "D": idx(self.D)}

    @classmethod
    def from_json(cls, data: dict) -> "BooleanFactorization":
        n, k = int(data["n"]), int(data["k"])
        C = _rows_from_indices(data["C"], k)
        D = _rows_from_indices(data["D"], k)
        return cls(n, k, C, D)

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n")

    @classmethod
    def load(cls, path) -> "BooleanFactorization":
        return cls.from_json(json.loads(Path(path).read_text()))


def _bitmatrix(rows: Sequence[int], k: int) -> np.ndarray:
    """0/1 float matrix with row r holding the bits of rows[r]."""
    width = (k + 7) // 8
    buf = b"".join(r.to_bytes(width, "little") for r in rows)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), width)
    return np.unpackbits(packed, axis=1, bitorder="little")[:, :k].astype(np.float32)


def verify_boolean(fact: BooleanFactorization, homogeneous: bool = False) -> list[Violation]:
    """Return every violation; an empty list means the certificate is valid.

    Checks that row i of C meets row j of D exactly when entry (i, j) of the
    n-gon pattern is positive, the homogeneous row weights floor(k/2) and
    ceil(k/2) - 1 when requested, and that rows are pairwise distinct.
    """
    n, k = fact.n, fact.k
    if len(fact.C) != n or len(fact.D) != n:
        raise ValueError(f"expected {n} rows in C and D, got {len(fact.C)} and {len(fact.D)}")
    if k < 1:
        raise ValueError("k must be positive")
    limit = 1 << k
    for name, rows in (("C", fact.C), ("D", fact.D)):
        for r in rows:
            if not 0 <= r < limit:
                raise ValueError(f"row of {name} uses columns beyond k={k}")

    out: list[Violation] = []
    # support of C * D^T as one real matrix product; counts stay far below 2^24
    prod = _bitmatrix(fact.C, k) @ _bitmatrix(fact.D, k).T
    expected = np.ones((n, n), dtype=bool)
    idx = np.arange(n)
    expected[idx, idx] = False
    expected[idx, (idx - 1) % n] = False
    for i, j in np.argwhere((prod > 0) != expected).tolist():
        want = "positive" if expected[i, j] else "zero"
        out.append(Violation("support", i, j, f"pattern entry is {want}"))
    if homogeneous:
        wc, wd = k // 2, (k + 1) // 2 - 1
        for i, r in enumerate(fact.C):
            if r.bit_count() != wc:
                out.append(Violation("weight_C", i, None, f"weight {r.bit_count()} != {wc}"))
        for j, r in enumerate(fact.D):
            if r.bit_count() != wd:
                out.append(Violation("weight_D", j, None, f"weight {r.bit_count()} != {wd}"))
    for name, rows in (("C", fact.C), ("D", fact.D)):
        seen: dict[int, int] = {}
        for i, r in enumerate(rows):
            if r in seen:
                out.append(Violation(f"duplicate_{name}", i, seen[r], "rows are equal"))
            else:
                seen[r] = i
    return out


def is_valid(fact: BooleanFactorization, homogeneous: bool = False) -> bool:
    return not verify_boolean(fact, homogeneous)


def trivial_padding(n: int) -> BooleanFactorization:
    """Homogeneous factorization of size 2n - 3: C = [0 | supp S], D = [1 | I].

    For n = 3 there is no padding and this is the support/identity pair.
    """
    if n < 3:
        raise ValueError(f"a polygon needs n >= 3, got {n}")
    pad = n - 3
    ones = (1 << pad) - 1
    full = ((1 << n) - 1) << pad
    C = [full & ~(1 << (pad + i)) & ~(1 << (pad + (i - 1) % n)) for i in range(n)]
    D = tuple(ones | (1 << (pad + j)) for j in range(n))
    return BooleanFactorization(n, 2 * n - 3, tuple(C), D)
