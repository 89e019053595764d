"""Acceptance criteria, one test each.

Every test records a one-line verdict; the lines are printed together at
the end of the module (and by ``python tests/test_acceptance.py``).
"""

import random
import time
from fractions import Fraction

import pytest

from test_slopes import _cofactor_det, _eval
from u2slopes.classical import cm_form_level4, cm_form_level8, dimension_cuspforms
from u2slopes.exact import ONE, ZERO, QuadRat, val2_quad
from u2slopes.modfunc import identity_suite
from u2slopes.qseries import QSeries, u2, v2op
from u2slopes.slopes import (
    char_poly,
    classical_slopes,
    conjugated_matrix,
    distinct_slope_check,
    newton_polygon,
    overconvergent_slopes,
    serre_conditions_check,
)
from u2slopes.umatrix import UMatrix, conjugate_scale, diamond_check, mod2_reduce, realize

VERDICTS: dict[int, str] = {}


def _extra(items) -> str:
    return f" {items}" if items else ""


def _record(n: int, ok: bool, text: str) -> None:
    VERDICTS[n] = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"
    assert ok, VERDICTS[n]


@pytest.fixture(scope="module", autouse=True)
def _print_verdicts(request):
    yield
    tr = request.config.pluginmanager.getplugin("terminalreporter")
    write = tr.write_line if tr else print
    write("")
    for n in sorted(VERDICTS):
        write(VERDICTS[n])


def _slopes_ok(N, weights, expected):
    bad, times = [], []
    for k in weights:
        t = time.perf_counter()
        got = overconvergent_slopes(N, realize(N, k), 10).certified[:10]
        times.append(time.perf_counter() - t)
        if got != expected:
            bad.append((k, [str(s) for s in got]))
    return bad, max(times)


def test_criterion_1_level4_slopes():
    bad, worst = _slopes_ok(4, (3, 13, 51), [2 * i for i in range(1, 11)])
    _record(1, not bad, f"level 4 weights 3, 13, 51 give 2..20 (RAW sizes 20/28, slowest {worst:.2f}s){_extra(bad)}")


def test_criterion_2_level8_slopes():
    bad, worst = _slopes_ok(8, (3, 5, 4, 8), list(range(1, 11)))
    _record(2, not bad, f"level 8 weights 3, 5 (chi*tau) and 4, 8 (chi) give 1..10 (slowest {worst:.2f}s){_extra(bad)}")


def test_criterion_3_classical_tables():
    a = classical_slopes(4, realize(4, 13))
    b = classical_slopes(8, realize(8, 5))
    ok = (
        a == [2, 4, 6, 8, 10] and b == [1, 2, 3]
        and dimension_cuspforms(13, 2) == 5 and dimension_cuspforms(5, 3) == 3
    )
    _record(3, ok, f"S13(4, tau) -> {[str(s) for s in a]}, S5(8, chi*tau) -> {[str(s) for s in b]}")


def test_criterion_4_identity_suite():
    t = time.perf_counter()
    reports = identity_suite(200)
    dt = time.perf_counter() - t
    failed = [r.name for r in reports if not r.passed]
    _record(4, not failed and dt < 60, f"{len(reports)} identities at depth 200 in {dt:.2f}s{_extra(failed)}")


def test_criterion_5_diamond():
    reports = [diamond_check(N, 200) for N in (4, 8)]
    _record(5, all(reports), "valuation pattern of U(z_N^2) for i <= 200 at N = 4, 8")


def test_criterion_6_mod2_determinants():
    cases = [(4, 3), (4, 13), (4, 51), (8, 3), (8, 5), (8, 4)]
    bad = []
    for N, k in cases:
        dets = mod2_reduce(conjugated_matrix(N, realize(N, k), 32)).leading_dets()
        if dets != [1] * 32:
            bad.append((N, k))
    _record(6, not bad, f"leading mod 2 determinants all 1 for n <= 32 at {cases}{_extra(bad)}")


def test_criterion_7_serre():
    cases = [(4, 3, 2), (4, 13, 2), (8, 5, 1), (8, 4, 1)]
    reports = [serre_conditions_check(conjugated_matrix(N, realize(N, k), 12), r) for N, k, r in cases]
    ok = all(r.passed and r.data["conclusion"] for r in reports)
    _record(7, ok, f"v(det M_m) = r m(m+1)/2 and column bounds r j for m <= 12, (N, k, r) in {cases}")


def test_criterion_8_cm():
    vals = {
        "f5": val2_quad(cm_form_level4(5, 4)[2]),
        "f13": val2_quad(cm_form_level4(13, 4)[2]),
        "g3": val2_quad(cm_form_level8(3, 4)[2]),
        "g7": val2_quad(cm_form_level8(7, 4)[2]),
    }
    want = {"f5": 2, "f13": 6, "g3": 2, "g7": 6}
    member = Fraction(6) in classical_slopes(4, realize(4, 13))
    ok = all(vals[k] == want[k] for k in want) and member
    _record(8, ok, f"v(a_2): {', '.join(f'{k}={v}' for k, v in vals.items())}; 6 in classical list of S13: {member}")


# -- criterion 9: property corpora with fixed seeds ------------------------


def _rand_frac(rng):
    return Fraction(rng.randint(-30, 30), rng.choice([1, 1, 2, 3, 4, 8]))


def _rand_quad(rng):
    return QuadRat(_rand_frac(rng), _rand_frac(rng))


def _rand_series(rng, n):
    return QSeries(tuple(_rand_quad(rng) for _ in range(n)))


def _properties(rng, cases):
    failures = []
    for _ in range(cases):
        n = rng.randint(1, 10)
        f, g, h = (_rand_series(rng, n) for _ in range(3))
        if not (f * g == g * f and (f * g) * h == f * (g * h) and f * (g + h) == f * g + f * h):
            failures.append("ring axioms")
        if u2(v2op(f)) != f:
            failures.append("U o V = id")
        lhs, rhs = u2(f * v2op(g)), u2(f) * g
        m = min(lhs.prec, rhs.prec)
        if lhs.truncate(m) != rhs.truncate(m):
            failures.append("U(f V(g)) = U(f) g")
        a, b = _rand_quad(rng), _rand_quad(rng)
        if val2_quad(a * b) != val2_quad(a) + val2_quad(b):
            failures.append("valuation multiplicativity")
        poly = newton_polygon([ONE] + [_rand_quad(rng) for _ in range(rng.randint(1, 8))])
        sl = [s for s, _ in poly.segments]
        if sl != sorted(set(sl)) or sum(m for _, m in poly.segments) != poly.vertices[-1][0]:
            failures.append("Newton polygon convexity")
        k = rng.randint(1, 5)
        M = [[_rand_quad(rng) for _ in range(k)] for _ in range(k)]
        cp = char_poly(M).coeffs
        for t in range(k + 1):
            tq = QuadRat(t)
            A = [[(ONE if i == j else ZERO) - tq * M[i][j] for j in range(k)] for i in range(k)]
            if _eval(cp, tq) != _cofactor_det(A):
                failures.append("char poly vs cofactor")
                break
        alpha = _rand_quad(rng) or ONE
        U = UMatrix(M, 4, realize(4, 3))
        if char_poly(conjugate_scale(U, alpha)).coeffs != cp:
            failures.append("similarity invariance")
    return failures


def test_criterion_9_property_suites():
    failures = _properties(random.Random(20240601), 100)
    _record(9, not failures, f"7 property families x 100 seeded cases{_extra(sorted(set(failures)))}")


def test_criterion_10_distinct_slopes():
    a = classical_slopes(4, realize(4, 13))
    b = classical_slopes(8, realize(8, 5))
    _record(10, distinct_slope_check(a) and distinct_slope_check(b), "classical slope lists are pairwise distinct")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(VERDICTS, key=int):
        print(VERDICTS[n])
