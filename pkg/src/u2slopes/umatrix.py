"""Matrices of U_2 composed with a weight multiplier, in the z_N basis.

Index convention
----------------
``UMatrix.entries[j-1][i-1]`` is the coefficient of ``z^j`` in the image of
the basis vector ``z^i``: columns are images, so the matrix acts on
coefficient columns.  Since ``U(z^odd) = 0`` the odd-indexed *columns* of a
RAW matrix vanish.  Characteristic polynomials and leading minors do not
see the orientation.

Compressed matrices keep the even rows and columns; compressed index ``i``
stands for ``z^(2i)``.  A diagonal scaling by ``alpha^i`` on the raw basis is
therefore a scaling by ``(alpha^2)^i`` on the compressed one, which is why
:func:`compressed_alpha` returns ``alpha^2`` (4 at level 4, 2 at level 8).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import SQRT2, ZERO, HalfVal, QuadRat, as_quad, val2_quad
from .linalg import gf2_det, gf2_leading_dets
from .modfunc import eisenstein_ratio, uniformizer
from .qseries import CHI, CHI_TAU, TAU, PrecisionError, QSeries, WeightChar, u2
from .report import CheckReport

log = logging.getLogger(__name__)

__all__ = [
    "RAW",
    "COMPRESSED",
    "CONJUGATED",
    "UnrealizableWeightError",
    "ZSeries",
    "UMatrix",
    "Mod2Matrix",
    "LEVEL_ALPHA",
    "compressed_alpha",
    "realize",
    "check_realizable",
    "precision_needed",
    "q_to_z",
    "z_expansion",
    "multiplier",
    "build_u_matrix",
    "compressed_matrix",
    "compress_even",
    "conjugate_scale",
    "mod2_reduce",
    "column_genfun_matrix",
    "column_genfun_check",
    "multiplier_congruence_check",
    "diamond_check",
]

RAW = "RAW"
COMPRESSED = "COMPRESSED"
CONJUGATED = "CONJUGATED"

LEVEL_ALPHA = {4: QuadRat(2), 8: SQRT2}
_BASE_CHAR = {4: WeightChar(1, TAU), 8: WeightChar(1, CHI_TAU)}


class UnrealizableWeightError(ValueError):
    """No weight-character of the requested shape exists at this level."""


def compressed_alpha(N: int) -> QuadRat:
    return LEVEL_ALPHA[N] * LEVEL_ALPHA[N]


def realize(N: int, k: int) -> WeightChar:
    """The weight-character handled at level ``N`` and weight ``k``.

    Level 4: odd ``k`` with ``tau``.  Level 8: odd ``k`` with ``chi*tau``,
    even ``k`` with ``chi``.
    """
    if N not in (4, 8):
        raise UnrealizableWeightError(f"level must be 4 or 8, got {N}")
    if k < 1:
        raise UnrealizableWeightError(f"weight must be positive, got {k}")
    if N == 4:
        if k % 2 == 0:
            raise UnrealizableWeightError(f"tau is odd; weight {k} is even")
        return WeightChar(k, TAU)
    return WeightChar(k, CHI_TAU if k % 2 else CHI)


def check_realizable(N: int, kappa: WeightChar) -> None:
    if realize(N, kappa.k) != kappa:
        raise UnrealizableWeightError(f"{kappa} is not handled at level {N}")


def precision_needed(n: int) -> int:
    """q-precision that determines an ``n x n`` RAW matrix."""
    return 2 * (n + 2)


@dataclass(frozen=True)
class ZSeries:
    """``sum_{j <= J} coeffs[j] z^j``; the q-residual has order > J."""

    coeffs: tuple[QuadRat, ...]
    basis: str = "z"

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int) -> QuadRat:
        return self.coeffs[j]


class _PowerTable:
    """q-coefficients of ``z^0 .. z^J`` below ``q^(J+1)``."""

    def __init__(self, z: QSeries, J: int):
        if z.leading_order != 1:
            raise PrecisionError("uniformiser must have q-order exactly 1")
        if z.prec < J + 1:
            raise PrecisionError(f"uniformiser known to q^{z.prec - 1}, need q^{J}")
        zt = z.truncate(J + 1)
        self.J = J
        self.rows: list[tuple[QuadRat, ...]] = [QSeries.one(J + 1).coeffs]
        p = zt
        for _ in range(J):
            self.rows.append(p.coeffs[: J + 1])
            p = (p * zt).truncate(J + 1)
        self.lead_inv = [x.inverse() if x else None for x in (self.rows[j][j] for j in range(J + 1))]


def q_to_z(f: QSeries, z: QSeries, J: int, basis: str = "z", _table: _PowerTable | None = None) -> ZSeries:
    """Expand ``f`` in powers of the uniformiser ``z`` up to ``z^J``.

    Triangular recursion: ``c_j`` is the ``q^j`` coefficient of
    ``f - sum_{i<j} c_i z^i`` divided by the ``q^j`` coefficient of ``z^j``.
    """
    if f.prec < J + 1:
        raise PrecisionError(f"series known to q^{f.prec - 1}, need q^{J}")
    table = _table if _table is not None else _PowerTable(z, J)
    rows = table.rows
    c: list[QuadRat] = []
    for j in range(J + 1):
        acc = f.coeffs[j]
        for i, ci in enumerate(c):
            if ci:
                t = rows[i][j]
                if t:
                    acc = acc - ci * t
        c.append(acc * table.lead_inv[j] if acc else ZERO)
    return ZSeries(tuple(c), basis)


def z_expansion(N: int, f: QSeries, J: int) -> ZSeries:
    """``f`` in powers of ``z_N``; ``f`` must be known to ``q^J``."""
    return q_to_z(f, uniformizer(N, max(J + 1, 2)), J, basis=f"z{N}")


def multiplier(N: int, kappa: WeightChar, P: int) -> QSeries:
    """q-expansion of the weight multiplier for ``kappa`` at level ``N``.

    Odd weight ``t``: ``(E*_{1,theta}/V*_{1,theta})^t`` with ``theta`` the
    level's odd character.  Even weight at level 8: ``E*_{k,chi}/V*_{k,chi}``.
    """
    check_realizable(N, kappa)
    if kappa.k % 2:
        return eisenstein_ratio(_BASE_CHAR[N], P) ** kappa.k
    return eisenstein_ratio(kappa, P)


@dataclass
class UMatrix:
    """Finite truncation of ``U_2 o (multiplier)`` in the ``z_N`` basis."""

    entries: list[list[QuadRat]]
    level: int
    kappa: WeightChar
    form: str = RAW
    q_precision: int = 0
    constant_terms: tuple[QuadRat, ...] = ()
    alpha: QuadRat | None = None
    order: str = "u_then_multiply"

    @property
    def n(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> list[QuadRat]:
        return [row[j] for row in self.entries]

    def leading(self, m: int) -> list[list[QuadRat]]:
        return [row[:m] for row in self.entries[:m]]

    def valuations(self) -> list[list[HalfVal]]:
        return [[val2_quad(x) for x in row] for row in self.entries]

    def column_min_valuations(self) -> list[HalfVal]:
        vals = self.valuations()
        return [min(v[j] for v in vals) for j in range(self.n)]


def build_u_matrix(
    N: int,
    kappa: WeightChar,
    n: int,
    P: int | None = None,
    order: str = "u_then_multiply",
) -> UMatrix:
    """RAW ``n x n`` matrix: column ``i`` holds the z-expansion of
    ``U(z^i) * multiplier`` (or ``U(z^i * multiplier)`` with
    ``order="multiply_then_u"``), coefficients of ``z^1 .. z^n``.

    ``P`` below the required precision is raised automatically.
    """
    if n < 1:
        raise ValueError("n >= 1")
    if order not in ("u_then_multiply", "multiply_then_u"):
        raise ValueError(f"unknown order {order!r}")
    check_realizable(N, kappa)
    need = precision_needed(n)
    if P is None or P < need:
        if P is not None:
            log.info("raising q-precision from %d to %d for n=%d", P, need, n)
        P = need
    z = uniformizer(N, P)
    mult = multiplier(N, kappa, P)
    table = _PowerTable(z, n)
    columns = []
    consts = []
    zi = z
    for i in range(1, n + 1):
        if order == "u_then_multiply":
            img = u2(zi) * mult
        else:
            img = u2(zi * mult)
        img = img.truncate(n + 1)
        if any(img.coeffs):
            zs = q_to_z(img, z, n, basis=f"z{N}", _table=table)
            coeffs = zs.coeffs
        else:
            coeffs = (ZERO,) * (n + 1)
        consts.append(coeffs[0])
        columns.append(coeffs[1:])
        zi = zi * z
    entries = [[columns[i][j] for i in range(n)] for j in range(n)]
    return UMatrix(entries, N, kappa, RAW, P, tuple(consts), order=order)


def compress_even(M: UMatrix) -> UMatrix:
    """Keep even-indexed rows and columns of a RAW matrix of size ``2n``."""
    if M.form != RAW:
        raise ValueError("compress_even expects a RAW matrix")
    if M.n % 2:
        raise ValueError("RAW size must be even")
    for i in range(0, M.n, 2):  # 1-based odd columns
        if any(row[i] for row in M.entries):
            raise ValueError(f"column {i + 1} of the RAW matrix is not zero (U(z^odd) != 0)")
    half = M.n // 2
    entries = [[M.entries[2 * r + 1][2 * c + 1] for c in range(half)] for r in range(half)]
    return UMatrix(
        entries, M.level, M.kappa, COMPRESSED, M.q_precision,
        tuple(M.constant_terms[1::2]), order=M.order,
    )


def compressed_matrix(N: int, kappa: WeightChar, n: int, P: int | None = None) -> UMatrix:
    """Compressed ``n x n`` matrix from the RAW ``2n x 2n`` one."""
    return compress_even(build_u_matrix(N, kappa, 2 * n, P))


def conjugate_scale(O: UMatrix, alpha) -> UMatrix:
    """``D(alpha)^-1 O D(alpha)``: entry ``(i, j)`` times ``alpha^(j-i)``."""
    alpha = as_quad(alpha)
    n = O.n
    powers = {d: alpha ** d for d in range(-n, n + 1)}
    entries = [[x * powers[j - i] if x else ZERO for j, x in enumerate(row)] for i, row in enumerate(O.entries)]
    return UMatrix(entries, O.level, O.kappa, CONJUGATED, O.q_precision, O.constant_terms, alpha, O.order)


@dataclass
class Mod2Matrix:
    bits: np.ndarray

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    def det(self) -> int:
        return gf2_det(self.bits)

    def leading_dets(self) -> list[int]:
        return gf2_leading_dets(self.bits)


def mod2_reduce(Oprime: UMatrix, alpha=None) -> Mod2Matrix:
    """Divide column ``j`` of a conjugated matrix by ``alpha^j`` and reduce mod 2.

    Raises ``ValueError`` if a rescaled entry is not 2-adically integral.
    """
    if alpha is None:
        alpha = Oprime.alpha
    if alpha is None:
        raise ValueError("alpha required")
    alpha = as_quad(alpha)
    n = Oprime.n
    inv_pows = [alpha ** (-(j + 1)) for j in range(n)]
    bits = np.zeros((n, n), dtype=np.uint8)
    for i, row in enumerate(Oprime.entries):
        for j, x in enumerate(row):
            if not x:
                continue
            y = x * inv_pows[j]
            if val2_quad(y) < 0:
                raise ValueError(f"entry ({i + 1},{j + 1}) = {y} is not integral")
            bits[i, j] = y.mod2()
    return Mod2Matrix(bits)


# -- mod 2 generating functions -------------------------------------------


def _f2_one_plus_x_pow(e: int, n: int) -> np.ndarray:
    """``(1+x)^e`` in F_2[x]/(x^n); negative ``e`` allowed."""
    out = np.zeros(n, dtype=np.uint8)
    if e >= 0:
        # Lucas: C(e, k) odd iff k & e == k
        for k in range(min(n, e + 1)):
            if k & e == k:
                out[k] = 1
        return out
    m = -e
    # (1+x)^-m = sum_k C(m+k-1, k) x^k  (mod 2)
    for k in range(n):
        top = m + k - 1
        if k & top == k:
            out[k] = 1
    return out


def _f2_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    return (np.convolve(a.astype(np.int64), b.astype(np.int64))[:n] & 1).astype(np.uint8)


def _genfun_column(c: int, i: int, n: int, common: int = 0) -> np.ndarray:
    """``x^ceil(c/2) (1+x)^(i-c+common)`` mod ``x^(n+1)``."""
    col = _f2_one_plus_x_pow(i - c + common, n + 1)
    shift = (c + 1) // 2
    out = np.zeros(n + 1, dtype=np.uint8)
    out[shift:] = col[: n + 1 - shift]
    return out


def column_genfun_matrix(n: int, i: int) -> Mod2Matrix:
    """Matrix whose column ``c`` holds ``x^1..x^n`` of ``x^ceil(c/2)(1+x)^(i-c)``."""
    cols = [_genfun_column(c, i, n)[1:] for c in range(1, n + 1)]
    return Mod2Matrix(np.array(cols, dtype=np.uint8).T.copy())


def _peel(cols: dict[int, np.ndarray]) -> tuple[bool, list[int]]:
    """Independence by elimination: a monomial present in exactly one
    remaining column forces that column's coefficient to be zero."""
    remaining = dict(cols)
    order = []
    while remaining:
        counts = np.sum(list(remaining.values()), axis=0)
        single = np.nonzero(counts == 1)[0]
        if single.size == 0:
            return False, order
        deg = single[-1]
        c = next(k for k, v in remaining.items() if v[deg])
        order.append(c)
        del remaining[c]
    return True, order


def column_genfun_check(n: int, i: int, duplicate: int | None = None) -> CheckReport:
    """Mod 2 column generating functions for weight ``2i+1`` and size ``n``.

    Multiplies every column by the common unit ``(1+x)^(n-i)`` so that
    column ``c`` becomes ``x^ceil(c/2)(1+x)^(n-c)``, runs the elimination
    (a monomial present in exactly one remaining column forces that
    column's coefficient to vanish), and independently computes the F_2
    determinant.  ``duplicate`` replaces the last column by a copy of that
    column index (negative test).
    """
    if n < 1:
        raise ValueError("n >= 1")
    cols = {c: _genfun_column(c, i, n, common=n - i) for c in range(1, n + 1)}
    M = column_genfun_matrix(n, i)
    if duplicate is not None:
        cols[n] = cols[duplicate].copy()
        M.bits[:, n - 1] = M.bits[:, duplicate - 1]
    independent, order = _peel(cols)
    d = M.det()
    return CheckReport(
        "column_genfun",
        independent and d == 1,
        f"size {n}, weight {2 * i + 1}: elimination {'succeeds' if independent else 'stalls'}, det {d}",
        data={"determinant": d, "basis": independent, "elimination_order": order},
    )


# -- multiplier congruence and the diamond condition ----------------------


def multiplier_congruence_check(
    k: int,
    J: int = 24,
    ratio: QSeries | None = None,
) -> CheckReport:
    """``E*_{k,chi}/V*_{k,chi}`` in ``x = sqrt2 z8`` is ``1 + x`` mod 2.

    ``ratio`` overrides the q-series (for mutation tests).
    """
    if k % 4:
        raise ValueError("k must be divisible by 4")
    P = J + 2
    if ratio is None:
        ratio = eisenstein_ratio(WeightChar(k, CHI), P)
    zs = z_expansion(8, ratio.truncate(J + 1), J)
    rescaled = [c * SQRT2 ** (-j) for j, c in enumerate(zs.coeffs)]
    bad = None
    residues = []
    for j, f in enumerate(rescaled):
        if val2_quad(f) < 0:
            bad = j
            break
        r = f.mod2()
        residues.append(r)
        if r != (1 if j <= 1 else 0):
            bad = j
            break
    return CheckReport(
        f"multiplier_congruence_k{k}",
        bad is None,
        f"E*_{k},chi/V*_{k},chi = 1 + x mod 2 with x = sqrt2*z8, through x^{J}",
        precision=P,
        first_mismatch=bad,
        data={"residues": residues, "head": [str(x) for x in rescaled[:6]]},
    )


def _predicted_uz2(N: int, i: int) -> QuadRat:
    if N == 4:
        return QuadRat(i * (-1) ** (i - 1) * 2 ** i)
    if i % 2 == 0:
        return ZERO
    return SQRT2 * QuadRat((-2) ** ((i - 1) // 2))


def diamond_check(N: int, I: int) -> CheckReport:
    """``U(z_N^2) = sum a_i z_N^i``: ``v(a_i) = 4i/N`` for odd ``i``,
    ``v(a_i) > 4i/N`` for even ``i``, and ``a_i`` equal to the closed-form
    expansion, for ``i <= I``.
    """
    if I < 1:
        raise ValueError("I >= 1")
    P = 2 * (I + 2)
    z = uniformizer(N, P)
    w = u2(z * z).truncate(I + 1)
    a = q_to_z(w, z, I, basis=f"z{N}").coeffs
    bad_val = bad_form = None
    for i in range(1, I + 1):
        v = val2_quad(a[i])
        target = HalfVal.of(Fraction(4 * i, N))
        ok = (v == target) if i % 2 else (v > target)
        if not ok and bad_val is None:
            bad_val = i
        if a[i] != _predicted_uz2(N, i) and bad_form is None:
            bad_form = i
    passed = bad_val is None and bad_form is None and not a[0]
    return CheckReport(
        f"diamond_N{N}",
        passed,
        f"valuation pattern and closed form of U(z{N}^2) through z^{I}",
        precision=P,
        first_mismatch=bad_val if bad_val is not None else bad_form,
        data={
            "first_valuation_failure": bad_val,
            "first_closed_form_failure": bad_form,
            "head": [str(x) for x in a[1:7]],
        },
    )
