"""Classical cusp-form dimensions and the CM theta series f_k, g_l."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exact import QuadRat, val2
from .qseries import QSeries
from .report import CheckReport
from .umatrix import realize

__all__ = [
    "GaussInt",
    "dimension_cuspforms",
    "cm_form_level4",
    "cm_form_level8",
    "cm_slope_crosscheck",
]


@dataclass(frozen=True)
class GaussInt:
    re: int
    im: int

    def __mul__(self, other: GaussInt) -> GaussInt:
        return GaussInt(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def __pow__(self, e: int) -> GaussInt:
        if e < 0:
            raise ValueError("nonnegative exponent")
        out, base = GaussInt(1, 0), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


def dimension_cuspforms(k: int, m: int) -> int:
    """``max(0, 2^(m-3)(k-1) - 1)`` for conductor ``2^m``; ``m = 2`` allowed."""
    if k < 2 or m < 2:
        raise ValueError("need k >= 2 and m >= 2")
    d = Fraction(2) ** (m - 3) * (k - 1) - 1
    if d.denominator != 1:
        raise ValueError(f"non-integral dimension {d} for k={k}, m={m}")
    return max(0, int(d))


def _theta_sum(exponent: int, d: int, P: int, scale: Fraction) -> QSeries:
    """``scale * sum (m + d n i)^exponent q^(m^2 + d n^2)`` over exponents below ``P``."""
    re = [0] * P
    im = [0] * P
    bound = isqrt(P) + 1
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            n = a * a + d * b * b
            if n >= P:
                continue
            z = GaussInt(a, d * b) ** exponent
            re[n] += z.re
            im[n] += z.im
    bad = [n for n in range(P) if im[n]]
    if bad:
        raise ArithmeticError(f"imaginary parts do not cancel at q^{bad[0]}")
    f = QSeries(tuple(QuadRat(scale * c) for c in re))
    if f[1] != QuadRat(1):
        raise ArithmeticError(f"a_1 = {f[1]}, expected 1")
    return f


def cm_form_level4(k: int, P: int) -> QSeries:
    """``f_k = 1/4 sum (m + n i)^(k-1) q^(m^2+n^2)`` for ``k = 1 mod 4``, ``k >= 5``."""
    if k % 4 != 1 or k < 5:
        raise ValueError("f_k needs k = 1 mod 4 and k >= 5")
    if P < 3:
        raise ValueError("P >= 3")
    return _theta_sum(k - 1, 1, P, Fraction(1, 4))


def cm_form_level8(l: int, P: int) -> QSeries:
    """``g_l = 1/2 sum (m + 2n i)^(l-1) q^(m^2+2n^2)`` for odd ``l >= 3``."""
    if l % 2 != 1 or l < 3:
        raise ValueError("g_l needs odd l >= 3")
    if P < 3:
        raise ValueError("P >= 3")
    return _theta_sum(l - 1, 2, P, Fraction(1, 2))


def cm_slope_crosscheck(N: int, k: int, P: int = 8) -> CheckReport:
    """Slope ``v(a_2)`` of the CM form of weight ``k`` against the classical list.

    At level 8 the slope of ``g_k`` is ``k - 1``, which sits on the
    classicality boundary and is never in the list ``1..k-2``; that case is
    reported as a boundary slope and does not count as a failure.
    """
    from .slopes import classical_slopes

    if N == 4:
        f = cm_form_level4(k, P)
        label = f"f_{k}"
    elif N == 8:
        f = cm_form_level8(k, P)
        label = f"g_{k}"
    else:
        raise ValueError("level must be 4 or 8")
    slope = val2(f[2].a).as_fraction()
    listed = classical_slopes(N, realize(N, k))
    member = slope in listed
    data = {"form": label, "slope": str(slope), "classical": [str(s) for s in listed], "member": member}
    if member:
        return CheckReport("cm_slope", True, f"slope of {label} is {slope}, in the classical list", data=data)
    if N == 8 and slope == k - 1:
        data["boundary"] = True
        return CheckReport(
            "cm_slope",
            True,
            f"slope of {label} is {slope} = k - 1: slope at classicality boundary, outside 1..{k - 2}",
            data=data,
        )
    return CheckReport("cm_slope", False, f"slope of {label} is {slope}, not in {data['classical']}", data=data)
