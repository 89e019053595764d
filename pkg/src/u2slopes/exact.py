"""Exact arithmetic in Q and Q(sqrt 2) with 2-adic valuations.

Rationals are :class:`fractions.Fraction`.  Elements ``a + b*sqrt(2)`` are
:class:`QuadRat`, stored as integer numerators over one shared positive
denominator so that the series kernels can work on plain ``int`` vectors.
Valuations are normalised by ``v(2) = 1`` and live in ``(1/2)Z``; they are
represented by :class:`HalfVal`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd
from numbers import Rational
from typing import Union

Rat = Fraction

__all__ = [
    "Rat",
    "HalfVal",
    "INFINITY",
    "QuadRat",
    "SQRT2",
    "ONE",
    "ZERO",
    "val2",
    "val2_int",
    "val2_quad",
    "as_quad",
]


def val2_int(n: int) -> int:
    """Exponent of 2 in the nonzero integer ``n``."""
    return (n & -n).bit_length() - 1


@total_ordering
class HalfVal:
    """A value in ``(1/2)Z`` or infinity, stored as twice the value."""

    __slots__ = ("_twice",)

    def __init__(self, twice: int | None):
        self._twice = twice

    @classmethod
    def of(cls, value: int | Fraction) -> HalfVal:
        t = Fraction(value) * 2
        if t.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(t))

    @property
    def twice(self) -> int | None:
        return self._twice

    @property
    def is_infinite(self) -> bool:
        return self._twice is None

    def as_fraction(self) -> Fraction:
        if self._twice is None:
            raise OverflowError("infinite valuation has no rational value")
        return Fraction(self._twice, 2)

    def __add__(self, other: HalfVal | int) -> HalfVal:
        if isinstance(other, int):
            other = HalfVal(2 * other)
        if self._twice is None or other._twice is None:
            return INFINITY
        return HalfVal(self._twice + other._twice)

    __radd__ = __add__

    def _key(self, other):
        if isinstance(other, HalfVal):
            return other._twice
        if isinstance(other, (int, Fraction)):
            t = Fraction(other) * 2
            return t
        return NotImplemented

    def __eq__(self, other) -> bool:
        o = self._key(other)
        if o is NotImplemented:
            return NotImplemented
        return self._twice == o

    def __lt__(self, other) -> bool:
        o = self._key(other)
        if o is NotImplemented:
            return NotImplemented
        if self._twice is None:
            return False
        if o is None:
            return True
        return self._twice < o

    def __hash__(self) -> int:
        return hash(("HalfVal", self._twice))

    def __repr__(self) -> str:
        if self._twice is None:
            return "HalfVal(inf)"
        return f"HalfVal({self})"

    def __str__(self) -> str:
        if self._twice is None:
            return "inf"
        if self._twice % 2 == 0:
            return str(self._twice // 2)
        return f"{self._twice}/2"


INFINITY = HalfVal(None)


def val2(x: Fraction | int) -> HalfVal:
    """2-adic valuation of a rational; ``INFINITY`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return HalfVal(2 * (val2_int(x.numerator) - val2_int(x.denominator)))


Scalar = Union[int, Fraction, "QuadRat"]


class QuadRat:
    """Element ``(a + b*sqrt(2))`` of Q(sqrt 2), immutable.

    Canonical form: ``(anum + bnum*sqrt 2) / den`` with ``den >= 1`` and
    ``gcd(anum, bnum, den) == 1``.
    """

    __slots__ = ("anum", "bnum", "den")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, anum: int, bnum: int, den: int) -> None:
        g = gcd(gcd(anum, bnum), den)
        if g != 1:
            anum //= g
            bnum //= g
            den //= g
        object.__setattr__(self, "anum", anum)
        object.__setattr__(self, "bnum", bnum)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_ints(cls, anum: int, bnum: int, den: int = 1) -> QuadRat:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            anum, bnum, den = -anum, -bnum, -den
        obj = object.__new__(cls)
        obj._set(anum, bnum, den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    @property
    def a(self) -> Fraction:
        return Fraction(self.anum, self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.bnum, self.den)

    def is_rational(self) -> bool:
        return self.bnum == 0

    def __bool__(self) -> bool:
        return self.anum != 0 or self.bnum != 0

    def conjugate(self) -> QuadRat:
        return QuadRat.from_ints(self.anum, -self.bnum, self.den)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``."""
        return Fraction(self.anum * self.anum - 2 * self.bnum * self.bnum, self.den * self.den)

    def __add__(self, other: Scalar) -> QuadRat:
        o = as_quad(other)
        if o is NotImplemented:
            return NotImplemented
        d1, d2 = self.den, o.den
        if d1 == d2:
            return QuadRat.from_ints(self.anum + o.anum, self.bnum + o.bnum, d1)
        return QuadRat.from_ints(self.anum * d2 + o.anum * d1, self.bnum * d2 + o.bnum * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> QuadRat:
        return QuadRat.from_ints(-self.anum, -self.bnum, self.den)

    def __sub__(self, other: Scalar) -> QuadRat:
        o = as_quad(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> QuadRat:
        return (-self) + other

    def __mul__(self, other: Scalar) -> QuadRat:
        o = as_quad(other)
        if o is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2 = self.anum, self.bnum, o.anum, o.bnum
        return QuadRat.from_ints(a1 * a2 + 2 * b1 * b2, a1 * b2 + a2 * b1, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> QuadRat:
        n = self.anum * self.anum - 2 * self.bnum * self.bnum
        if n == 0:
            raise ZeroDivisionError("QuadRat zero is not invertible")
        # 1/((a + b r)/d) = d (a - b r) / (a^2 - 2 b^2)
        return QuadRat.from_ints(self.den * self.anum, -self.den * self.bnum, n)

    def __truediv__(self, other: Scalar) -> QuadRat:
        o = as_quad(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> QuadRat:
        return as_quad(other) * self.inverse()

    def __pow__(self, e: int) -> QuadRat:
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = ONE
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        o = as_quad(other)
        if o is NotImplemented:
            return NotImplemented
        return self.anum == o.anum and self.bnum == o.bnum and self.den == o.den

    def __hash__(self) -> int:
        if self.bnum == 0:
            return hash(Fraction(self.anum, self.den))
        return hash((self.anum, self.bnum, self.den))

    def __repr__(self) -> str:
        return f"QuadRat({self})"

    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        bs = "sqrt2" if abs(b) == 1 else f"{abs(b)}*sqrt2"
        if a == 0:
            return ("-" if b < 0 else "") + bs
        return f"{a} {'-' if b < 0 else '+'} {bs}"

    def mod2(self) -> int:
        """Residue in F_2 of a 2-adically integral element.

        ``b*sqrt2`` has positive valuation whenever the element is integral,
        so only the rational part contributes.
        """
        if val2_quad(self) < 0:
            raise ValueError(f"{self} is not 2-adically integral")
        a = self.a
        return (a.numerator * pow(a.denominator, -1, 2)) % 2 if a else 0


def as_quad(x) -> QuadRat:
    if isinstance(x, QuadRat):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        x = Fraction(x)
        return QuadRat.from_ints(x.numerator, 0, x.denominator)
    return NotImplemented


def val2_quad(x: QuadRat) -> HalfVal:
    """``min(v(a), v(b) + 1/2)``; the two never tie."""
    x = as_quad(x)
    if not x:
        return INFINITY
    dv = 2 * val2_int(x.den)
    cands = []
    if x.anum:
        cands.append(2 * val2_int(x.anum) - dv)
    if x.bnum:
        cands.append(2 * val2_int(x.bnum) - dv + 1)
    return HalfVal(min(cands))


ZERO = QuadRat.from_ints(0, 0, 1)
ONE = QuadRat.from_ints(1, 0, 1)
SQRT2 = QuadRat.from_ints(0, 1, 1)
