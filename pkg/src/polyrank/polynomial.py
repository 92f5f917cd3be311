"""Sparse multivariate polynomials with integer coefficients.

A polynomial is a map from exponent vectors (tuples of length ``nvars``) to
nonzero ints. Only what the symbolic minors need: ring operations,
evaluation, a fixed monomial order and printing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

__all__ = ["Polynomial", "determinant"]


@dataclass(frozen=True)
class Polynomial:
    nvars: int
    terms: tuple[tuple[tuple[int, ...], int], ...]  # sorted, lex-descending exponents

    @classmethod
    def from_dict(cls, nvars: int, d: Mapping[tuple[int, ...], int]) -> "Polynomial":
        items = [(e, c) for e, c in d.items() if c != 0]
        for e, _ in items:
            if len(e) != nvars:
                raise ValueError("exponent vector has the wrong length")
        items.sort(reverse=True)
        return cls(nvars, tuple(items))

    @classmethod
    def constant(cls, nvars: int, c: int) -> "Polynomial":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """The variable x_index (1-based)."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable x{index} outside 1..{nvars}")
        e = [0] * nvars
        e[index - 1] = 1
        return cls.from_dict(nvars, {tuple(e): 1})

    @classmethod
    def from_entry(cls, nvars: int, entry: str) -> "Polynomial":
        """Parse a symbolic slack entry: "0", "1" or "x<idx>"."""
        if entry == "0":
            return cls(nvars, ())
        if entry == "1":
            return cls.constant(nvars, 1)
        if entry.startswith("x"):
            return cls.variable(nvars, int(entry[1:]))
        raise ValueError(f"unknown symbolic entry {entry!r}")

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable sets")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Polynomial.from_dict(self.nvars, d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        d: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return Polynomial.from_dict(self.nvars, d)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial.from_dict(self.nvars, {e: c * v for e, v in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def variables(self) -> set[int]:
        """1-based indices of the variables that occur."""
        return {i + 1 for e, _ in self.terms for i, x in enumerate(e) if x}

    def normalized(self) -> "Polynomial":
        """Global sign chosen so the lex-largest monomial has a positive coefficient."""
        if self.terms and self.terms[0][1] < 0:
            return -self
        return self

    def evaluate(self, values: Sequence):
        """Evaluate at values[i] for x_{i+1}; works for any ring with * and +."""
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        total = 0
        for e, c in self.terms:
            term = c
            for v, x in zip(values, e):
                for _ in range(x):
                    term = term * v
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                f"x{i + 1}" if x == 1 else f"x{i + 1}^{x}" for i, x in enumerate(e) if x
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along columns, memoized on row sets.

    Zero entries are skipped, so the two structural zeros per column of a
    slack matrix cut the branching.
    """
    size = len(matrix)
    if size == 0:
        raise ValueError("empty matrix")
    nvars = matrix[0][0].nvars
    if any(len(r) != size for r in matrix):
        raise ValueError("determinant needs a square matrix")
    memo: dict[tuple[int, ...], Polynomial] = {}

    def rec(rows: tuple[int, ...]) -> Polynomial:
        col = size - len(rows)
        if not rows:
            return Polynomial.constant(nvars, 1)
        if rows in memo:
            return memo[rows]
        acc = Polynomial(nvars, ())
        for pos, r in enumerate(rows):
            entry = matrix[r][col]
            if entry.is_zero():
                continue
            sub = rec(rows[:pos] + rows[pos + 1:])
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[rows] = acc
        return acc

    return rec(tuple(range(size)))
