"""Exact integral homology via Smith normal form.

Matrices are plain lists of lists of Python ints, so coefficient growth
is never an issue at the scales that occur here.  Correctness of the
normal form is certified by the identity U*M*V = D rather than by the
reduction strategy.
"""

from __future__ import annotations

from math import gcd

__all__ = [
    "smith_normal_form",
    "invariant_factors",
    "matrix_rank",
    "homology",
    "homology_table",
    "mat_mul",
    "identity_matrix",
    "determinant",
]


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    n, m, p = len(A), len(B), len(B[0])
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for k in range(m):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(p):
                    Oi[j] += a * Bk[j]
    return out


def determinant(M):
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M):
    """Return (D, U, V) with U*M*V = D diagonal, d_1 | d_2 | ..., U, V unimodular."""
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        Ad, As = A[dst], A[src]
        for j in range(n):
            Ad[j] += k * As[j]
        Ud, Us = U[dst], U[src]
        for j in range(m):
            Ud[j] += k * Us[j]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    def negate_row(i):
        A[i] = [-v for v in A[i]]
        U[i] = [-v for v in U[i]]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the trailing block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (pivot is None or abs(v) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear the pivot column
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:  # remainder smaller than pivot: swap up
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # make the pivot divide the rest of the block
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return A, U, V


def invariant_factors(M):
    D, _, _ = smith_normal_form(M)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(abs(D[i][i]))
    return out


def matrix_rank(M):
    return len(invariant_factors(M))


def homology(cplx, n):
    """(betti, torsion coefficients) of H_n of a chain complex with d*d = 0."""
    dim_n = len(cplx.basis(n))
    rank_n = matrix_rank(cplx.matrix(n)) if n >= 1 else 0
    facs = invariant_factors(cplx.matrix(n + 1))
    betti = dim_n - rank_n - len(facs)
    torsion = [f for f in facs if f != 1]
    return betti, torsion


def homology_table(cplx, degrees):
    return {n: homology(cplx, n) for n in degrees}
