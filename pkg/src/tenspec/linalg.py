"""Exact linear algebra: fraction-free determinants, ranks, kernels, symbolic determinants."""

from fractions import Fraction
from functools import reduce
from math import lcm

import numpy as np

__all__ = ["det_exact", "det_field", "rank_exact", "kernel_exact", "det_symbolic", "det_float"]


def _is_rational_matrix(M):
    return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for row in M for x in row)


def _bareiss_int(A):
    """Determinant of an integer matrix (list of lists, modified in place)."""
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1] if n else 1


def det_exact(M):
    """Exact determinant of a square matrix of ints / Fractions.

    Each row is scaled to integers, Bareiss elimination runs over Z, and the row
    scalings are divided back out.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    if n == 0:
        return Fraction(1)
    if not _is_rational_matrix(M):
        return det_field(M)
    A = []
    denom = 1
    for row in M:
        row = [Fraction(x) for x in row]
        L = reduce(lcm, (x.denominator for x in row), 1)
        denom *= L
        A.append([int(x * L) for x in row])
    return Fraction(_bareiss_int(A), denom)


def det_field(M):
    """Determinant by Gaussian elimination over any exact field (Fraction, Cyclotomic)."""
    A = [list(r) for r in M]
    n = len(A)
    det = 1
    for k in range(n):
        p = next((r for r in range(k, n) if A[r][k] != 0), None)
        if p is None:
            return 0 * det
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        piv = A[k][k]
        det = det * piv
        inv = 1 / piv
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] * inv
                for j in range(k + 1, n):
                    A[i][j] = A[i][j] - f * A[k][j]
    return det


def _rref(M):
    A = [[Fraction(x) for x in r] for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank_exact(M):
    if not M or not M[0]:
        return 0
    return len(_rref(M)[1])


def kernel_exact(M):
    """Basis of the right kernel of a rational matrix, as lists of Fractions."""
    cols = len(M[0])
    A, pivots = _rref(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -A[r][f]
        basis.append(v)
    return basis


def det_symbolic(M):
    """Determinant of a small matrix with ring entries (e.g. MPoly) by memoized Laplace expansion."""
    n = len(M)
    memo = {}

    def minor(row, cols):
        if row == n:
            return None
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = None
        sign = 1
        for idx, c in enumerate(cols):
            entry = M[row][c]
            if not (hasattr(entry, "is_zero") and entry.is_zero()) and entry != 0:
                sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
                term = entry if sub is None else entry * sub
                term = term if sign > 0 else -term
                total = term if total is None else total + term
            sign = -sign
        if total is None:
            total = 0 * M[0][0]
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def det_float(M):
    return complex(np.linalg.det(np.asarray(M, dtype=complex)))
