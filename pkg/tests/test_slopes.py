from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_quads, quads
from u2slopes.exact import ONE, ZERO, QuadRat, val2_quad
from u2slopes.linalg import det
from u2slopes.slopes import (
    CertificationError,
    char_poly,
    classical_slopes,
    conjugated_matrix,
    distinct_slope_check,
    newton_polygon,
    overconvergent_slopes,
    serre_conditions_check,
)
from u2slopes.umatrix import UMatrix, compressed_matrix, conjugate_scale, realize


def _cofactor_det(M):
    n = len(M)
    if n == 0:
        return ONE
    total = ZERO
    for j, x in enumerate(M[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            term = x * _cofactor_det(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


def _eval(coeffs, t):
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


matrices = st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(quads, min_size=n, max_size=n), min_size=n, max_size=n))


@given(matrices)
def test_char_poly_matches_cofactor_oracle(M):
    cp = char_poly(M).coeffs
    n = len(M)
    assert len(cp) == n + 1 and cp[0] == ONE
    # a degree-n polynomial is pinned down by n+1 values
    for t in range(n + 1):
        tq = QuadRat(t)
        I_tM = [[(ONE if i == j else ZERO) - tq * M[i][j] for j in range(n)] for i in range(n)]
        assert _eval(cp, tq) == _cofactor_det(I_tM)


@given(matrices)
def test_det_matches_cofactor(M):
    assert det(M) == _cofactor_det(M)


@given(matrices, nonzero_quads)
def test_similarity_invariance(M, alpha):
    U = UMatrix([list(r) for r in M], 4, realize(4, 3))
    assert char_poly(conjugate_scale(U, alpha)).coeffs == char_poly(U).coeffs


def test_char_poly_examples():
    assert char_poly([[QuadRat(4)]]).coeffs == [ONE, QuadRat(-4)]
    assert char_poly([[QuadRat(2), ZERO], [ZERO, QuadRat(8)]]).coeffs == [ONE, QuadRat(-10), QuadRat(16)]


@pytest.mark.parametrize(
    "coeffs,segments",
    [
        ([1, -4], [(2, 1)]),
        ([1, 1, 2], [(0, 1), (1, 1)]),
        ([1, 4, 4], [(1, 2)]),
        ([1, 0, 0, 8], [(1, 3)]),
    ],
)
def test_newton_polygon_examples(coeffs, segments):
    np_ = newton_polygon([QuadRat(c) for c in coeffs])
    assert np_.segments == [(Fraction(s), m) for s, m in segments]


def test_newton_polygon_needs_constant_term():
    with pytest.raises(ValueError):
        newton_polygon([ZERO, ONE])


@given(st.lists(quads, min_size=1, max_size=10))
def test_newton_polygon_convexity(tail):
    coeffs = [ONE] + tail
    poly = newton_polygon(coeffs)
    slopes = [s for s, _ in poly.segments]
    assert slopes == sorted(slopes) and len(set(slopes)) == len(slopes)
    assert sum(m for _, m in poly.segments) == poly.vertices[-1][0]
    for i, v in poly.points:
        # every point lies on or above the hull
        for (x0, y0), (x1, y1) in zip(poly.vertices, poly.vertices[1:]):
            if x0 <= i <= x1:
                assert v >= y0 + (y1 - y0) * Fraction(i - x0, x1 - x0)


@given(st.lists(nonzero_quads, min_size=1, max_size=6))
def test_diagonal_slopes_are_sorted_valuations(diag):
    n = len(diag)
    M = [[diag[i] if i == j else ZERO for j in range(n)] for i in range(n)]
    got = newton_polygon(char_poly(M)).slopes()
    want = sorted(val2_quad(d).as_fraction() for d in diag)
    assert got == want


@pytest.mark.parametrize(
    "N,k,s,expected",
    [
        (4, 3, 10, [2 * i for i in range(1, 11)]),
        (8, 5, 10, list(range(1, 11))),
        (8, 4, 8, list(range(1, 9))),
    ],
)
def test_overconvergent_slopes(N, k, s, expected):
    rep = overconvergent_slopes(N, realize(N, k), s)
    assert rep.certified[:s] == expected
    assert rep.sizes == (2 * s, 2 * s + 8)


@pytest.mark.parametrize("stride", [4, 8, 12])
def test_certified_prefix_independent_of_size_pair(stride):
    rep = overconvergent_slopes(4, realize(4, 13), 6, stride=stride)
    assert rep.certified[:6] == [2, 4, 6, 8, 10, 12]


def test_certification_failure_is_raised(monkeypatch):
    import u2slopes.slopes as mod

    real = mod.compressed_matrix

    def perturbed(N, kappa, n, P=None):
        M = real(N, kappa, n, P)
        if n > 4:
            M.entries[0][0] = M.entries[0][0] * 8
        return M

    monkeypatch.setattr(mod, "compressed_matrix", perturbed)
    with pytest.raises(CertificationError):
        overconvergent_slopes(4, realize(4, 3), 4)


@pytest.mark.parametrize("N,k", [(4, 3), (8, 5)])
def test_slope_sum_is_determinant_valuation(N, k):
    M = compressed_matrix(N, realize(N, k), 8)
    slopes = newton_polygon(char_poly(M)).slopes()
    assert sum(slopes) == val2_quad(det(M.entries)).as_fraction()


@pytest.mark.parametrize("N,k,r", [(4, 3, 2), (4, 13, 2), (8, 5, 1), (8, 4, 1)])
def test_serre_conditions(N, k, r):
    rep = serre_conditions_check(conjugated_matrix(N, realize(N, k), 12), r)
    assert rep.passed, rep.summary()
    assert rep.data["conclusion"]


def test_serre_counterexample():
    M = [[QuadRat(2), ZERO, ZERO], [ZERO, QuadRat(4), ZERO], [ZERO, ZERO, QuadRat(16)]]
    rep = serre_conditions_check(M, 1)
    assert not rep.passed
    bad = [d for d in rep.data["determinants"] if not d["pass"]]
    assert [d["m"] for d in bad] == [3] and bad[0]["v_det"] == "7"


def test_serre_wrong_constant_fails():
    assert not serre_conditions_check(conjugated_matrix(4, realize(4, 3), 6), 1).passed


@pytest.mark.parametrize(
    "N,k,expected",
    [(4, 13, [2, 4, 6, 8, 10]), (8, 5, [1, 2, 3]), (4, 3, []), (4, 5, [2]), (8, 4, [1, 2])],
)
def test_classical_slopes(N, k, expected):
    assert classical_slopes(N, realize(N, k)) == expected


def test_classical_needs_weight_three():
    with pytest.raises(ValueError):
        classical_slopes(8, realize(8, 2))


@pytest.mark.parametrize("slopes,ok", [([2, 4, 6], True), ([1, 1, 2], False), ([], True)])
def test_distinct_slope_check(slopes, ok):
    assert distinct_slope_check(slopes) is ok
