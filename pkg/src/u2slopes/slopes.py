"""Characteristic polynomials, Newton polygons and slope certification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import HalfVal, QuadRat, val2_quad
from .linalg import charpoly_monic, leading_minors
from .qseries import WeightChar
from .report import CheckReport
from .umatrix import UMatrix, check_realizable, compressed_alpha, compressed_matrix, conjugate_scale

__all__ = [
    "CertificationError",
    "ClassicalityError",
    "CharPoly",
    "NewtonPolygon",
    "SlopeReport",
    "char_poly",
    "newton_polygon",
    "overconvergent_slopes",
    "serre_conditions_check",
    "classical_slopes",
    "conductor_exponent",
    "distinct_slope_check",
    "SIZE_STRIDE",
    "conjugated_matrix",
]

SIZE_STRIDE = 8


class CertificationError(RuntimeError):
    """Two truncations did not agree on enough slopes."""


class ClassicalityError(RuntimeError):
    """A slope counted as classical reached the bound ``k - 1``."""


@dataclass
class CharPoly:
    """``det(1 - tM) = sum coeffs[i] t^i``."""

    coeffs: list[QuadRat]
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def valuations(self) -> list[HalfVal]:
        return [val2_quad(c) for c in self.coeffs]


def char_poly(M: UMatrix | Sequence[Sequence[QuadRat]]) -> CharPoly:
    entries = M.entries if isinstance(M, UMatrix) else M
    monic = charpoly_monic(entries)
    meta = {}
    if isinstance(M, UMatrix):
        meta = {"level": M.level, "kappa": str(M.kappa), "form": M.form, "q_precision": M.q_precision}
    # det(1 - tM) = t^n det(t^-1 - M): same list, lowest degree first
    return CharPoly(list(monic), meta)


@dataclass
class NewtonPolygon:
    points: list[tuple[int, Fraction]]
    vertices: list[tuple[int, Fraction]]
    segments: list[tuple[Fraction, int]]

    def slopes(self) -> list[Fraction]:
        """Slopes repeated by multiplicity, nondecreasing."""
        return [s for s, m in self.segments for _ in range(m)]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(cp: CharPoly | Sequence[QuadRat]) -> NewtonPolygon:
    """Lower convex hull of ``(i, v(c_i))`` over nonzero ``c_i``."""
    coeffs = cp.coeffs if isinstance(cp, CharPoly) else list(cp)
    pts = [(i, val2_quad(c).as_fraction()) for i, c in enumerate(coeffs) if c]
    if not pts or pts[0][0] != 0:
        raise ValueError("constant coefficient must be nonzero")
    hull: list[tuple[int, Fraction]] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    segs = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segs.append((Fraction(y1 - y0) / (x1 - x0), x1 - x0))
    return NewtonPolygon(pts, hull, segs)


@dataclass
class SlopeReport:
    level: int
    kappa: WeightChar
    certified: list[Fraction]
    provisional: list[Fraction]
    sizes: tuple[int, int]
    q_precision: int

    def __str__(self) -> str:
        return ", ".join(str(s) for s in self.certified)


def overconvergent_slopes(
    N: int,
    kappa: WeightChar,
    s: int,
    stride: int = SIZE_STRIDE,
    P: int | None = None,
) -> SlopeReport:
    """First ``s`` slopes, certified by agreement of two truncations.

    RAW sizes ``2s`` and ``2s + stride`` are compressed to ``s`` and
    ``s + stride/2``; the common prefix of their Newton polygon slopes must
    have length at least ``s``.  ``P`` is a q-precision floor.
    """
    if s < 1:
        raise ValueError("s >= 1")
    check_realizable(N, kappa)
    if stride < 2 or stride % 2:
        raise ValueError("stride must be a positive even number")
    small = compressed_matrix(N, kappa, s, P)
    large = compressed_matrix(N, kappa, s + stride // 2, P)
    a = newton_polygon(char_poly(small)).slopes()
    b = newton_polygon(char_poly(large)).slopes()
    common = 0
    for x, y in zip(a, b):
        if x != y:
            break
        common += 1
    if common < s:
        raise CertificationError(
            f"only {common} of {s} slopes agree between RAW sizes {2 * s} and {2 * s + stride}"
        )
    return SlopeReport(N, kappa, b[:common], b[common:], (2 * s, 2 * s + stride), large.q_precision)


def serre_conditions_check(M: UMatrix | Sequence[Sequence[QuadRat]], r, upto: int | None = None) -> CheckReport:
    """Hypotheses of Serre's valuation criterion with constant ``r``.

    (a) ``v(det M_m) = r m(m+1)/2`` for every leading block, and
    (b) every entry of column ``j`` has valuation at least ``r j``.
    The implied conclusion ``v(c_m) = r m(m+1)/2`` is checked as well.
    """
    r = Fraction(r)
    entries = M.entries if isinstance(M, UMatrix) else [list(x) for x in M]
    n = len(entries) if upto is None else upto
    entries = [row[:n] for row in entries[:n]]
    minors = leading_minors(entries)
    per_m = []
    a_ok = True
    for m, d in enumerate(minors, start=1):
        v = val2_quad(d)
        want = r * m * (m + 1) / 2
        ok = not v.is_infinite and v.as_fraction() == want
        a_ok &= ok
        per_m.append({"m": m, "v_det": str(v), "expected": str(want), "pass": ok})
    col_ok = True
    col_report = []
    for j in range(n):
        vmin = min(val2_quad(row[j]) for row in entries)
        ok = vmin >= r * (j + 1)
        col_ok &= ok
        col_report.append({"column": j + 1, "min_v": str(vmin), "bound": str(r * (j + 1)), "pass": ok})
    cp = charpoly_monic(entries)
    concl = [
        (not val2_quad(c).is_infinite) and val2_quad(c).as_fraction() == r * m * (m + 1) / 2
        for m, c in enumerate(cp[1:], start=1)
    ]
    return CheckReport(
        "serre_conditions",
        a_ok and col_ok,
        f"r = {r}, m <= {n}: (a) {'pass' if a_ok else 'fail'}, (b) {'pass' if col_ok else 'fail'}, "
        f"conclusion v(c_m) = r m(m+1)/2 {'holds' if all(concl) else 'fails'}",
        data={"determinants": per_m, "columns": col_report, "conclusion": all(concl)},
    )


def conductor_exponent(kappa: WeightChar) -> int:
    mod = kappa.chi.modulus
    m = mod.bit_length() - 1
    if 1 << m != mod:
        raise ValueError("conductor must be a power of 2")
    return m


def classical_slopes(
    N: int, kappa: WeightChar, stride: int = SIZE_STRIDE, P: int | None = None
) -> list[Fraction]:
    """Slopes on classical cusp forms: the first ``d`` overconvergent ones,
    ``d`` from the dimension formula, each below ``k - 1``."""
    from .classical import dimension_cuspforms

    check_realizable(N, kappa)
    if kappa.k < 3:
        raise ValueError("weight must be >= 3")
    d = dimension_cuspforms(kappa.k, conductor_exponent(kappa))
    if d == 0:
        return []
    rep = overconvergent_slopes(N, kappa, d, stride, P)
    out = rep.certified[:d]
    for sl in out:
        if sl >= kappa.k - 1:
            raise ClassicalityError(f"slope {sl} is not below k - 1 = {kappa.k - 1}")
    return out


def distinct_slope_check(slopes: Sequence) -> bool:
    return len(set(slopes)) == len(list(slopes))


def conjugated_matrix(N: int, kappa: WeightChar, n: int) -> UMatrix:
    """Compressed matrix conjugated by ``D(alpha^2)``."""
    return conjugate_scale(compressed_matrix(N, kappa, n), compressed_alpha(N))
