"""Truncated q-expansions over Q(sqrt 2).

A :class:`QSeries` knows coefficients of ``q^0 .. q^(prec-1)``; everything
beyond is unknown.  Arithmetic only ever reports coefficients that are
determined by the inputs.

The multiplication kernel works on integer vectors: a series is written as
``(A + B*sqrt2) / d`` with ``A``, ``B`` lists of ints and ``d`` a common
denominator, so a product is four integer convolutions and one
normalisation pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from .exact import ZERO, QuadRat, as_quad

__all__ = [
    "PrecisionError",
    "QSeries",
    "DirichletChar",
    "TRIVIAL",
    "TAU",
    "CHI",
    "CHI_TAU",
    "WeightChar",
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_twisted",
    "delta",
    "e4",
    "eisenstein_star",
    "u2",
    "v2op",
    "vm",
    "one_plus_power_product",
]


class PrecisionError(ValueError):
    """Raised when a requested result is not determined by the inputs."""


def _convolve(x: Sequence[int], y: Sequence[int], n: int) -> list[int]:
    """First ``n`` terms of the product of two int sequences."""
    out = [0] * n
    ny = len(y)
    for i, xi in enumerate(x[:n]):
        if xi:
            lim = min(ny, n - i)
            for j in range(lim):
                yj = y[j]
                if yj:
                    out[i + j] += xi * yj
    return out


def _to_ints(coeffs: Sequence[QuadRat]) -> tuple[list[int], list[int], int]:
    d = 1
    for c in coeffs:
        if c.den != 1:
            d = lcm(d, c.den)
    if d == 1:
        return [c.anum for c in coeffs], [c.bnum for c in coeffs], 1
    A = [c.anum * (d // c.den) for c in coeffs]
    B = [c.bnum * (d // c.den) for c in coeffs]
    return A, B, d


def _from_ints(A: Sequence[int], B: Sequence[int], d: int) -> tuple[QuadRat, ...]:
    if d == 1:
        return tuple(QuadRat.from_ints(a, b, 1) for a, b in zip(A, B))
    return tuple(QuadRat.from_ints(a, b, d) for a, b in zip(A, B))


@dataclass(frozen=True, eq=False)
class QSeries:
    """Truncated q-expansion ``sum_{n < prec} coeffs[n] q^n + O(q^prec)``."""

    coeffs: tuple[QuadRat, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_quad(c) for c in self.coeffs))

    @classmethod
    def from_list(cls, values: Iterable, prec: int | None = None) -> QSeries:
        vals = [as_quad(v) for v in values]
        if prec is not None:
            if prec < len(vals):
                vals = vals[:prec]
            else:
                vals += [ZERO] * (prec - len(vals))
        return cls(tuple(vals))

    @classmethod
    def _from_ints(cls, A, B, d) -> QSeries:
        s = cls.__new__(cls)
        object.__setattr__(s, "coeffs", _from_ints(A, B, d))
        return s

    @classmethod
    def zero(cls, prec: int) -> QSeries:
        return cls((ZERO,) * prec)

    @classmethod
    def one(cls, prec: int) -> QSeries:
        return cls.monomial(0, prec)

    @classmethod
    def monomial(cls, n: int, prec: int, c=1) -> QSeries:
        vals = [ZERO] * prec
        if n < prec:
            vals[n] = as_quad(c)
        return cls(tuple(vals))

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    @cached_property
    def leading_order(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.prec

    @cached_property
    def _ints(self) -> tuple[list[int], list[int], int]:
        return _to_ints(self.coeffs)

    def __getitem__(self, n: int) -> QuadRat:
        if n >= self.prec:
            raise PrecisionError(f"coefficient q^{n} unknown (precision {self.prec})")
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.prec

    def truncate(self, prec: int) -> QSeries:
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision {self.prec} to {prec}")
        return QSeries(self.coeffs[:prec])

    def is_rational(self) -> bool:
        return all(c.bnum == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def first_mismatch(self, other: QSeries) -> int | None:
        """Lowest index where the two disagree within mutual precision."""
        for i, (x, y) in enumerate(zip(self.coeffs, other.coeffs)):
            if x != y:
                return i
        return None

    def __repr__(self) -> str:
        shown = [f"({c})*q^{i}" for i, c in enumerate(self.coeffs[:8]) if c]
        return f"QSeries({' + '.join(shown) or '0'} + O(q^{self.prec}))"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, self.prec, other)
        n = min(self.prec, other.prec)
        return QSeries(tuple(x + y for x, y in zip(self.coeffs[:n], other.coeffs[:n])))

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, self.prec, other)
        return self + (-other)

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def scale(self, c) -> QSeries:
        c = as_quad(c)
        return QSeries(tuple(c * x for x in self.coeffs))

    def __mul__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            return self.scale(other)
        o1, o2 = self.leading_order, other.leading_order
        n = min(self.prec + o2, other.prec + o1)
        A1, B1, d1 = self._ints
        A2, B2, d2 = other._ints
        AA = _convolve(A1, A2, n)
        BB = _convolve(B1, B2, n)
        AB = _convolve(A1, B2, n)
        BA = _convolve(B1, A2, n)
        A = [x + 2 * y for x, y in zip(AA, BB)]
        B = [x + y for x, y in zip(AB, BA)]
        return QSeries._from_ints(A, B, d1 * d2)

    def __rmul__(self, other) -> QSeries:
        return self.scale(other)

    def inverse(self) -> QSeries:
        """Multiplicative inverse; the constant term must be invertible.

        Newton iteration ``r <- r (2 - f r)`` doubles the known precision
        each round and reuses the integer multiplication kernel.
        """
        if self.prec == 0:
            raise PrecisionError("empty series")
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("constant term is zero; series is not invertible")
        target = self.prec
        r = QSeries((c0.inverse(),))
        k = 1
        while k < target:
            k = min(2 * k, target)
            f = self.truncate(k)
            r = QSeries.from_list(r.coeffs, k)
            fr = f * r
            two_minus = QSeries.monomial(0, k, 2) - fr
            r = (r * two_minus).truncate(k)
        return r

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self.scale(as_quad(other).inverse())

    def __pow__(self, e: int) -> QSeries:
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = QSeries.one(base.prec)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conjugate(self) -> QSeries:
        return QSeries(tuple(c.conjugate() for c in self.coeffs))

    def compose_poly(self, poly: Sequence) -> QSeries:
        """``sum poly[i] * self^i`` (Horner)."""
        acc = QSeries.monomial(0, self.prec, 0)
        for c in reversed(list(poly)):
            acc = acc * self + QSeries.monomial(0, self.prec, c)
        return acc


def u2(f: QSeries) -> QSeries:
    """``sum a_n q^n -> sum a_{2n} q^n``; precision ceil(P/2)."""
    return QSeries(f.coeffs[::2])


def vm(f: QSeries, m: int) -> QSeries:
    """``q -> q^m``; precision ``m(P-1)+1``."""
    if f.prec == 0:
        return f
    out = [ZERO] * (m * (f.prec - 1) + 1)
    for i, c in enumerate(f.coeffs):
        out[m * i] = c
    return QSeries(tuple(out))


def v2op(f: QSeries) -> QSeries:
    """``q -> q^2``; precision ``2P-1``."""
    return vm(f, 2)


# -- characters and Bernoulli numbers -------------------------------------


@dataclass(frozen=True)
class DirichletChar:
    """Real Dirichlet character given by its value table on units."""

    modulus: int
    values: Mapping[int, int] = field(hash=False)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))

    def __call__(self, n: int) -> int:
        return self.values.get(n % self.modulus, 0)

    def parity(self) -> int:
        return self(-1)

    def __hash__(self) -> int:
        return hash((self.modulus, tuple(sorted(self.values.items()))))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletChar):
            return NotImplemented
        return self.modulus == other.modulus and self.values == other.values

    def __str__(self) -> str:
        return self.label or f"char mod {self.modulus}"


TRIVIAL = DirichletChar(1, {0: 1}, "trivial")
TAU = DirichletChar(4, {1: 1, 3: -1}, "tau")
CHI = DirichletChar(8, {1: 1, 3: -1, 5: -1, 7: 1}, "chi")
CHI_TAU = DirichletChar(8, {1: 1, 3: 1, 5: -1, 7: -1}, "chi*tau")


@dataclass(frozen=True)
class WeightChar:
    """Weight-character ``(k, chi)`` with ``chi(-1) = (-1)^k``."""

    k: int
    chi: DirichletChar

    def __post_init__(self):
        if self.chi.parity() != (-1) ** self.k:
            raise ValueError(f"{self.chi}(-1) != (-1)^{self.k}")

    def __str__(self) -> str:
        return f"({self.k}, {self.chi})"


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with ``B_1 = -1/2``."""
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    s = sum(comb(n + 1, j) * bernoulli_number(j) for j in range(n))
    return -s / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum(comb(n, j) * bernoulli_number(j) * x ** (n - j) for j in range(n + 1))


@lru_cache(maxsize=None)
def bernoulli_twisted(k: int, theta: DirichletChar) -> Fraction:
    """Generalised Bernoulli number ``B_{k,theta}``.

    Uses ``N^(k-1) * sum_{a=1}^{N} theta(a) B_k(a/N)`` with ``N`` the modulus.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    N = theta.modulus
    return Fraction(N) ** (k - 1) * sum(
        theta(a) * bernoulli_poly(k, Fraction(a, N)) for a in range(1, N + 1)
    )


# -- named series ---------------------------------------------------------


def _euler_product(P: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) below q^P."""
    e = [0] * P
    if P:
        e[0] = 1
    for n in range(1, P):
        for i in range(P - 1, n - 1, -1):
            e[i] -= e[i - n]
    return e


@lru_cache(maxsize=32)
def delta(P: int) -> QSeries:
    """``q prod (1-q^n)^24`` to precision ``P``."""
    if P < 1:
        raise ValueError("P >= 1")
    e = QSeries.from_list(_euler_product(P))
    body = (e ** 24).truncate(P - 1) if P > 1 else QSeries.zero(0)
    return QSeries((ZERO,) + body.coeffs)


@lru_cache(maxsize=32)
def e4(P: int) -> QSeries:
    """``1 + 240 sum sigma_3(n) q^n``."""
    if P < 1:
        raise ValueError("P >= 1")
    sig = [0] * P
    for d in range(1, P):
        d3 = d ** 3
        for n in range(d, P, d):
            sig[n] += d3
    return QSeries.from_list([1] + [240 * s for s in sig[1:]])


def one_plus_power_product(factors: Sequence[tuple[int, int]], P: int) -> QSeries:
    """``prod_{n>=1} prod_{(m, e)} (1 + q^{m n})^e`` to precision ``P``."""
    c = [0] * P
    c[0] = 1
    for m, e in factors:
        n = 1
        while m * n < P:
            step = m * n
            for _ in range(e):
                for i in range(P - 1, step - 1, -1):
                    c[i] += c[i - step]
            n += 1
    return QSeries.from_list(c)


@lru_cache(maxsize=64)
def eisenstein_star(kappa: WeightChar, P: int) -> QSeries:
    """``-B_{k,theta}/2k + sum_n (sum_{d | n, d odd} theta(d) d^(k-1)) q^n``."""
    k, theta = kappa.k, kappa.chi
    if k < 1:
        raise ValueError("weight must be >= 1")
    coeffs = [0] * P
    for d in range(1, P, 2):
        t = theta(d)
        if t:
            w = t * d ** (k - 1)
            for n in range(d, P, d):
                coeffs[n] += w
    const = -bernoulli_twisted(k, theta) / (2 * k)
    return QSeries.from_list([const] + coeffs[1:], P)
