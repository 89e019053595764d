"""Hauptmoduln for X_0(8), X_0(16), the uniformisers z_4, z_8, and the
q-expansion identities relating them.

Every identity is checked in a cleared, integrally powered form: no
fractional powers of Delta and no Laurent tails.  ``hN`` below always
denotes the reciprocal ``1/j_N``, which is an honest power series
``q + O(q^2)``.

Several identities as commonly printed contain slips.  The ``verify_*``
functions check the corrected form by default and take keyword arguments
that reproduce the printed variant, so both readings can be reported.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .exact import SQRT2, QuadRat
from .qseries import (
    CHI,
    CHI_TAU,
    TAU,
    QSeries,
    WeightChar,
    delta,
    e4,
    eisenstein_star,
    one_plus_power_product,
    u2,
    v2op,
    vm,
)
from .report import CheckReport

__all__ = [
    "DEFAULT_DEPTH",
    "J_NUMERATOR",
    "E4CHI_NUMERATOR",
    "E4CHI_DENOMINATOR",
    "eisenstein_ratio",
    "j8_inv",
    "j16_inv",
    "z4",
    "z8",
    "uniformizer",
    "verify_j_identity",
    "verify_j8_j16_identity",
    "verify_eta_quotients",
    "verify_z_identities",
    "verify_uz2_closed_forms",
    "verify_e4chi_ratio",
    "verify_uniformizer_lemma",
    "identity_suite",
]

DEFAULT_DEPTH = 200

# j8^4 + 256 j8^3 + 5120 j8^2 + 32768 j8 + 65536, highest power first
J_NUMERATOR = (1, 256, 5120, 32768, 65536)
E4CHI_NUMERATOR = (11, 2, 24, -48, -16, -352)
E4CHI_DENOMINATOR = (11, 0, 24, 0, -16)


def eisenstein_ratio(kappa: WeightChar, P: int) -> QSeries:
    """``E*_kappa / V(E*_kappa)`` to precision ``P``; constant term 1."""
    e = eisenstein_star(kappa, P)
    v = v2op(e).truncate(P)
    return e * v.inverse()


@lru_cache(maxsize=16)
def j8_inv(P: int) -> QSeries:
    """``1/j_8 = q prod (1+q^n)^4 (1+q^2n)^2 (1+q^4n)^4``."""
    if P < 2:
        raise ValueError("P >= 2")
    body = one_plus_power_product(((1, 4), (2, 2), (4, 4)), P - 1)
    return QSeries((QuadRat(0),) + body.coeffs)


@lru_cache(maxsize=16)
def j16_inv(P: int) -> QSeries:
    """``1/j_16 = q prod (1+q^n)^2 (1+q^2n) (1+q^4n) (1+q^8n)^2``."""
    if P < 2:
        raise ValueError("P >= 2")
    body = one_plus_power_product(((1, 2), (2, 1), (4, 1), (8, 2)), P - 1)
    return QSeries((QuadRat(0),) + body.coeffs)


@lru_cache(maxsize=16)
def z4(P: int) -> QSeries:
    """``(E*_{1,tau}/V*_{1,tau} - 1) / 2``; integral, only odd q-powers."""
    if P < 2:
        raise ValueError("P >= 2")
    r = eisenstein_ratio(WeightChar(1, TAU), P)
    return (r - 1).scale(QuadRat(1, 0) / 2)


@lru_cache(maxsize=16)
def z8(P: int) -> QSeries:
    """``(E*_{1,chi tau}/V*_{1,chi tau} - 1) / sqrt 2``; coefficients in sqrt2*Z."""
    if P < 2:
        raise ValueError("P >= 2")
    r = eisenstein_ratio(WeightChar(1, CHI_TAU), P)
    return (r - 1).scale(SQRT2.inverse())


def uniformizer(N: int, P: int) -> QSeries:
    if N == 4:
        return z4(P)
    if N == 8:
        return z8(P)
    raise ValueError(f"level must be 4 or 8, got {N}")


def _delta_at(m: int, P: int) -> QSeries:
    """``Delta(q^m)`` to precision ``P``."""
    base = delta(-(-(P - 1) // m) + 1)
    return vm(base, m).truncate(P)


def _compare(name: str, lhs: QSeries, rhs: QSeries, detail: str, **data) -> CheckReport:
    n = min(lhs.prec, rhs.prec)
    lhs, rhs = lhs.truncate(n), rhs.truncate(n)
    bad = lhs.first_mismatch(rhs)
    return CheckReport(
        name=name,
        passed=bad is None,
        detail=detail,
        precision=n,
        first_mismatch=bad,
        data=data,
    )


def verify_j_identity(
    P: int = DEFAULT_DEPTH,
    numerator: Sequence[int] = J_NUMERATOR,
    j8_power: int = 8,
) -> CheckReport:
    """``j = N(j8)^3 / (j8^a (j8^2 + 16 j8 + 64)(j8 + 4))`` with ``a = j8_power``.

    Both sides have a simple pole at infinity only when ``a = 8`` (the
    denominator must have degree 11 against the numerator's 12); ``a = 0``
    is the form without the ``j8^8`` factor.  In ``h = 1/j8`` the cleared
    identity is ``E4^3 (1+16h+64h^2)(1+4h) h^(9-a) = Delta * N~(h)^3`` where
    ``N~(h) = h^4 N(1/h)``.
    """
    if P < 2:
        raise ValueError("P >= 2")
    h = j8_inv(P)
    shift = 9 - j8_power
    lhs = e4(P) ** 3 * h.compose_poly((1, 16, 64)) * h.compose_poly((1, 4))
    if shift >= 0:
        lhs = lhs * h ** shift
        rhs = delta(P) * h.compose_poly(numerator) ** 3
    else:
        rhs = delta(P) * h.compose_poly(numerator) ** 3 * h ** (-shift)
    return _compare(
        "j_identity",
        lhs,
        rhs,
        f"j in terms of j8, numerator {tuple(numerator)}, j8^{j8_power} in denominator",
        j8_power=j8_power,
    )


def verify_j8_j16_identity(P: int = DEFAULT_DEPTH, coefficient: int = 2) -> CheckReport:
    """``1/j8 = 1/j16 + c/j16^2`` with ``c = coefficient``."""
    h8, h16 = j8_inv(P), j16_inv(P)
    return _compare(
        "j8_j16_identity",
        h8,
        h16 + (h16 * h16).scale(coefficient),
        f"1/j8 = 1/j16 + {coefficient}/j16^2",
    )


def verify_eta_quotients(P: int = DEFAULT_DEPTH, printed: bool = False) -> list[CheckReport]:
    """Eta-quotient forms of ``1/j8`` and ``1/j16``, raised to clear roots.

    Corrected: ``(1/j8)^12 Delta(q)^2 Delta(q^4) = Delta(q^2) Delta(q^8)^2`` and
    ``(1/j16)^24 Delta(q)^2 Delta(q^8) = Delta(q^2) Delta(q^16)^2``.
    With ``printed=True`` the displayed quotients are checked instead
    (``(1/j8)^12 Delta(q) Delta(q^4) = Delta(q^2) Delta(q^8)`` and
    ``(1/j16)^24 Delta(q^16)^2 Delta(q^2) = Delta(q^8) Delta(q)^2``).
    """
    h8, h16 = j8_inv(P), j16_inv(P)
    D = {m: _delta_at(m, P) for m in (1, 2, 4, 8, 16)}
    if printed:
        pairs = [
            ("eta_quotient_j8_printed", h8 ** 12 * D[1] * D[4], D[2] * D[8]),
            ("eta_quotient_j16_printed", h16 ** 24 * D[16] * D[16] * D[2], D[8] * D[1] * D[1]),
        ]
    else:
        pairs = [
            ("eta_quotient_j8", h8 ** 12 * D[1] * D[1] * D[4], D[2] * D[8] * D[8]),
            ("eta_quotient_j16", h16 ** 24 * D[1] * D[1] * D[8], D[2] * D[16] * D[16]),
        ]
    return [_compare(name, lhs, rhs, "cleared eta-quotient") for name, lhs, rhs in pairs]


def verify_z_identities(P: int = DEFAULT_DEPTH, z4_shift: int = 4) -> list[CheckReport]:
    """``z4 = 2/(j8 + s)`` with ``s = z4_shift`` and ``z8 = sqrt2/(j16 + 2)``.

    Only ``s = 4`` gives a series with vanishing even coefficients, which
    ``z4`` must have; ``s = 2`` is the printed variant.
    """
    h8, h16 = j8_inv(P), j16_inv(P)
    zz4, zz8 = z4(P), z8(P)
    return [
        _compare(
            "z4_closed_form",
            zz4 * (1 + h8.scale(z4_shift)),
            h8.scale(2),
            f"z4 * (1 + {z4_shift}/j8) = 2/j8",
        ),
        _compare(
            "z8_closed_form",
            zz8 * (1 + h16.scale(2)),
            h16.scale(SQRT2),
            "z8 * (1 + 2/j16) = sqrt2/j16",
        ),
    ]


def verify_uz2_closed_forms(P: int = DEFAULT_DEPTH, sign: int = 1) -> list[CheckReport]:
    """``U(z4^2)(1 + 2 z4)^2 = 2 z4`` and ``U(z8^2)(1 + 2 z8^2) = sqrt2 z8``.

    ``sign=-1`` flips the sign inside the denominators (mutation hook).
    """
    if P < 4:
        raise ValueError("P >= 4")
    half = P // 2
    zz4, zz8 = z4(P), z8(P)
    a4 = u2(zz4 * zz4).truncate(half)
    b4 = zz4.truncate(half)
    d4 = 1 + b4.scale(2 * sign)
    a8 = u2(zz8 * zz8).truncate(half)
    b8 = zz8.truncate(half)
    d8 = 1 + (b8 * b8).scale(2 * sign)
    op = "+" if sign > 0 else "-"
    return [
        _compare("U(z4^2)_closed_form", a4 * d4 * d4, b4.scale(2), f"U(z4^2) = 2 z4 / (1 {op} 2 z4)^2"),
        _compare("U(z8^2)_closed_form", a8 * d8, b8.scale(SQRT2), f"U(z8^2) = sqrt2 z8 / (1 {op} 2 z8^2)"),
    ]


def verify_e4chi_ratio(
    P: int = DEFAULT_DEPTH,
    numerator: Sequence[int] = E4CHI_NUMERATOR,
    denominator: Sequence[int] = E4CHI_DENOMINATOR,
    variable: str = "z8/sqrt2",
) -> CheckReport:
    """``E*_{4,chi}/V*_{4,chi} = num(w)/den(w)`` cross-multiplied.

    ``variable`` selects ``w``: ``"z8/sqrt2"`` (the reading under which the
    identity holds, since the left side has rational coefficients) or
    ``"z8"`` (literal; fails on the sqrt2-parts of odd powers).
    """
    if P < 2:
        raise ValueError("P >= 2")
    if variable == "z8/sqrt2":
        w = z8(P).scale(SQRT2.inverse())
    elif variable == "z8":
        w = z8(P)
    else:
        raise ValueError(f"unknown variable {variable!r}")
    ratio = eisenstein_ratio(WeightChar(4, CHI), P)
    return _compare(
        "E4chi_ratio",
        ratio * w.compose_poly(denominator),
        w.compose_poly(numerator),
        f"E*_4,chi / V*_4,chi as rational function of {variable}",
        variable=variable,
    )


def verify_uniformizer_lemma(N: int, P: int = 100, powers: int = 10) -> list[CheckReport]:
    """Odd q-support of ``z_N``, ``U(z^(2t+1)) = 0``, ``U(z^(2i)) = U(z^2)^i``."""
    z = uniformizer(N, P)
    odd_only = all(not c for c in z.coeffs[0::2])
    out = [CheckReport(f"z{N}_odd_support", odd_only, "z_N has only odd q-coefficients", precision=P)]
    zero_ok, bad_t = True, None
    pw = z
    z2 = z * z
    for t in range(powers + 1):
        if any(u2(pw).coeffs):
            zero_ok, bad_t = False, t
            break
        pw = pw * z2
    out.append(CheckReport(
        f"U(z{N}^odd)=0", zero_ok, f"U(z^(2t+1)) = 0 for t <= {powers}",
        precision=P, data={"first_bad_t": bad_t},
    ))
    w = u2(z2)
    pow_ok, bad_i = True, None
    zi = z2
    wi = w
    for i in range(1, powers + 1):
        lhs = u2(zi)
        n = min(lhs.prec, wi.prec)
        if lhs.truncate(n) != wi.truncate(n):
            pow_ok, bad_i = False, i
            break
        zi = zi * z2
        wi = wi * w
    out.append(CheckReport(
        f"U(z{N}^2i)=U(z{N}^2)^i", pow_ok, f"i <= {powers}",
        precision=P, data={"first_bad_i": bad_i},
    ))
    return out


def identity_suite(P: int = DEFAULT_DEPTH) -> list[CheckReport]:
    """All displayed q-expansion identities, corrected forms."""
    reports = [verify_j_identity(P), verify_j8_j16_identity(P)]
    reports += verify_eta_quotients(P)
    reports += verify_z_identities(P)
    reports += verify_uz2_closed_forms(P)
    reports.append(verify_e4chi_ratio(P))
    return reports
