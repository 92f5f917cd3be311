"""Small exact number fields: Q(sqrt d) and Q(i, sqrt 2).

Only what the slack matrices and the hexagon certificate need. Elements are
immutable and hashable; mixing with ``int`` and ``Fraction`` works, mixing two
different radicands raises ``TypeError``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "QuadraticNumber",
    "GaussianSqrt2",
    "exact_rank",
    "phi",
    "sqrt2",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class QuadraticNumber:
    """a + b*sqrt(d) with rational a, b and a fixed squarefree d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 5):
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise TypeError(f"mixing Q(sqrt {self.d}) with Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def inverse(self) -> "QuadraticNumber":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticNumber(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(d), decided exactly."""
        a, b, d = self.a, self.b, self.d
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with d*b^2
        diff = a * a - d * b * b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        bpart = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{self.b}*{root}"
        if self.a == 0:
            return bpart
        if bpart.startswith("-"):
            return f"{self.a}{bpart}"
        return f"{self.a}+{bpart}"


def phi() -> QuadraticNumber:
    """The golden ratio (1 + sqrt 5) / 2."""
    return QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)


def sqrt2() -> QuadraticNumber:
    return QuadraticNumber(0, 1, 2)


class GaussianSqrt2:
    """Element a + b*sqrt2 + c*i + d*sqrt2*i of Q(i, sqrt 2).

    Stored as real and imaginary parts in Q(sqrt 2).
    """

    __slots__ = ("re", "im")

    def __init__(self, a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0):
        self.re = QuadraticNumber(a, b, 2)
        self.im = QuadraticNumber(c, d, 2)

    @classmethod
    def from_parts(cls, re: QuadraticNumber, im: QuadraticNumber) -> "GaussianSqrt2":
        z = cls.__new__(cls)
        z.re = re
        z.im = im
        return z

    @classmethod
    def coerce(cls, x) -> "GaussianSqrt2":
        if isinstance(x, GaussianSqrt2):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, QuadraticNumber):
            if x.d != 2:
                raise TypeError(f"Q(sqrt {x.d}) is not a subfield of Q(i, sqrt 2)")
            return cls(x.a, x.b)
        raise TypeError(f"cannot coerce {x!r} into Q(i, sqrt 2)")

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re.a, self.re.b, self.im.a, self.im.b)

    def __add__(self, other):
        o = GaussianSqrt2.coerce(other)
        return GaussianSqrt2.from_parts(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianSqrt2.from_parts(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianSqrt2.coerce(other)
        return GaussianSqrt2.from_parts(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = GaussianSqrt2.coerce(other)
        return GaussianSqrt2.from_parts(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianSqrt2":
        return GaussianSqrt2.from_parts(self.re, -self.im)

    def abs2(self) -> QuadraticNumber:
        """|z|^2 as an element of Q(sqrt 2)."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianSqrt2":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        ninv = n.inverse()
        c = self.conjugate()
        return GaussianSqrt2.from_parts(c.re * ninv, c.im * ninv)

    def __truediv__(self, other):
        return self * GaussianSqrt2.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianSqrt2.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            o = GaussianSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return "GaussianSqrt2({}, {}, {}, {})".format(*self.coords())

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = str(self.im)
        if not self.re:
            return f"({im})*i"
        return f"{self.re}+({im})*i"


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix over an exact field by Gaussian elimination.

    Entries may be ints, Fractions or field elements supporting ``+ - * /``
    and truthiness (zero is falsy). No tolerance is involved.
    """
    mat = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            if mat[r][col]:
                f = mat[r][col] / p
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank

