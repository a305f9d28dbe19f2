"""Exact dense linear algebra over the rationals.

Matrices are tuples of row tuples of Fractions.  Row reduction is done by
the fraction-free integer kernel after clearing denominators row by row.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernels
from .errors import InvalidTransformError, UsageError
from .rational import integerize

ZERO = Fraction(0)
ONE = Fraction(1)


def identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(n, m=None):
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def matmul(A, B):
    if A and len(A[0]) != len(B):
        raise UsageError("matrix shapes do not match")
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * cols
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(tuple(acc))
    return tuple(out)


def matvec(A, v):
    return tuple(sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in A)


def transpose(A):
    return tuple(zip(*A)) if A else ()


def matpow(A, k):
    n = len(A)
    result = identity(n)
    base = A
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def is_zero_matrix(A):
    return all(not x for row in A for x in row)


def _int_rows(rows):
    return [integerize(r)[1] for r in rows]


def rref(rows, ncols):
    """Rational RREF of the given rows; zero rows dropped."""
    reduced = kernels.int_rref(_int_rows(rows), ncols)
    return tuple(rref_from_int(r) for r in reduced)


def rref_from_int(row):
    piv = next(x for x in row if x)
    return tuple(Fraction(x, piv) for x in row)


def rank(rows, ncols):
    return len(kernels.int_rref(_int_rows(rows), ncols))


def pivots(rref_rows):
    return [next(j for j, x in enumerate(r) if x) for r in rref_rows]


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0}, one vector per free column."""
    R = rref(rows, ncols)
    piv = pivots(R)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in zip(R, piv):
            v[p] = -r[free]
        basis.append(tuple(v))
    return basis


def inverse(A):
    """Exact inverse by Gauss-Jordan on [A | I]; InvalidTransformError if singular."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise UsageError("inverse needs a square matrix")
    aug = [tuple(A[i]) + tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]
    R = rref(aug, 2 * n)
    if len(R) < n or pivots(R)[n - 1] != n - 1:
        raise InvalidTransformError("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def is_invertible(A):
    return rank(A, len(A)) == len(A)
