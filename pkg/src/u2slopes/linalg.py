"""Exact dense linear algebra over Q(sqrt 2), plus determinants over F_2.

Matrices are plain lists of rows.  Sizes in this package stay below ~70,
so cubic field algorithms on exact entries are the whole story.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .exact import ONE, ZERO, QuadRat, as_quad

Matrix = list[list[QuadRat]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[as_quad(x) for x in row] for row in rows]


def transpose(M: Sequence[Sequence[QuadRat]]) -> Matrix:
    return [list(col) for col in zip(*M)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[QuadRat]], B: Sequence[Sequence[QuadRat]]) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        out.append([sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in Bt])
    return out


def det(M: Sequence[Sequence[QuadRat]]) -> QuadRat:
    """Determinant by Gaussian elimination over the field."""
    A = [list(r) for r in M]
    n = len(A)
    result = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        piv = A[c][c]
        result = result * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                rowc = A[c]
                A[r] = [x - f * y if y else x for x, y in zip(A[r], rowc)]
    return result


def leading_minors(M: Sequence[Sequence[QuadRat]], upto: int | None = None) -> list[QuadRat]:
    """``[det(M_1), ..., det(M_upto)]`` for the leading principal blocks."""
    n = len(M) if upto is None else upto
    return [det([row[:m] for row in M[:m]]) for m in range(1, n + 1)]


def _hessenberg(M: Sequence[Sequence[QuadRat]]) -> Matrix:
    H = [list(r) for r in M]
    n = len(H)
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if H[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        t = H[m][m - 1].inverse()
        for i in range(m + 1, n):
            u = H[i][m - 1] * t
            if not u:
                continue
            H[i] = [x - u * y if y else x for x, y in zip(H[i], H[m])]
            for row in H:
                if row[i]:
                    row[m] = row[m] + u * row[i]
    return H


def charpoly_monic(M: Sequence[Sequence[QuadRat]]) -> list[QuadRat]:
    """Coefficients ``[1, p_1, ..., p_n]`` of ``det(x I - M)``, highest first."""
    n = len(M)
    H = _hessenberg(M)
    # polys as lists, lowest degree first
    polys: list[list[QuadRat]] = [[ONE]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        hmm = H[m - 1][m - 1]
        cur = [ZERO] + prev  # x * p_{m-1}
        for d, c in enumerate(prev):
            cur[d] = cur[d] - hmm * c
        t = ONE
        for i in range(1, m):
            t = t * H[m - i][m - i - 1]
            if not t:
                break
            coef = t * H[m - i - 1][m - 1]
            if coef:
                for d, c in enumerate(polys[m - i - 1]):
                    cur[d] = cur[d] - coef * c
        polys.append(cur)
    return list(reversed(polys[n]))


def gf2_det(bits: np.ndarray) -> int:
    """Determinant over F_2 of a square 0/1 array."""
    A = (np.asarray(bits, dtype=np.uint8) & 1).copy()
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    for c in range(n):
        rows = np.nonzero(A[c:, c])[0]
        if rows.size == 0:
            return 0
        p = c + rows[0]
        if p != c:
            A[[c, p]] = A[[p, c]]
        below = np.nonzero(A[c + 1:, c])[0] + c + 1
        if below.size:
            A[below] ^= A[c]
    return 1


def gf2_leading_dets(bits: np.ndarray) -> list[int]:
    A = np.asarray(bits, dtype=np.uint8)
    return [gf2_det(A[:m, :m]) for m in range(1, A.shape[0] + 1)]
