"""Derivation spaces, inner derivations and nil-independence of pairs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels, linalg, poly
from .core import LinearMap, StructureTensor, basis_vector, check_leibniz, left_mult, right_mult
from .errors import PreconditionError, UsageError


@dataclass(frozen=True)
class DerivationSpace:
    algebra_dim: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def vectors(self):
        return tuple(tuple(D.flat()) for D in self.basis)

    def contains(self, D: LinearMap) -> bool:
        vecs = self.vectors()
        v = tuple(D.flat())
        n2 = self.algebra_dim ** 2
        return linalg.rank(vecs + (v,), n2) == linalg.rank(vecs, n2)


def _maps_from_rows(n, rows):
    return tuple(LinearMap(tuple(tuple(r[m * n:(m + 1) * n]) for m in range(n))) for r in rows)


def derivation_constraints(T: StructureTensor):
    """Integer rows of the linear system whose solutions are the derivations.

    Unknown index m*n + k is entry (m, k) of d, i.e. the e_m coordinate of d(e_k).
    For each pair (i, j) and output coordinate m:
        sum_k c^k_ij d[m,k] - sum_p d[p,i] c^m_pj - sum_q d[q,j] c^m_iq = 0
    """
    n = T.dim
    _, C = T.scaled
    rows = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    c = C[(i * n + j) * n + k]
                    if c:
                        row[m * n + k] += c
                for p in range(n):
                    c = C[(p * n + j) * n + m]
                    if c:
                        row[p * n + i] -= c
                    c = C[(i * n + p) * n + m]
                    if c:
                        row[p * n + j] -= c
                if any(row):
                    rows.append(row)
    return rows


def derivation_space(T: StructureTensor) -> DerivationSpace:
    n = T.dim
    reduced = kernels.int_rref(derivation_constraints(T), n * n)
    R = [linalg.rref_from_int(r) for r in reduced]
    piv = linalg.pivots(R)
    pivset = set(piv)
    sols = []
    for free in range(n * n):
        if free in pivset:
            continue
        v = [Fraction(0)] * (n * n)
        v[free] = Fraction(1)
        for r, p in zip(R, piv):
            v[p] = -r[free]
        sols.append(v)
    return DerivationSpace(n, _maps_from_rows(n, sols))


def inner_derivations(T: StructureTensor, side: str) -> DerivationSpace:
    """Span of the right (or left) multiplication operators, as an RREF basis."""
    if check_leibniz(T, side):
        raise PreconditionError(f"the {side} Leibniz identity fails; multiplication maps are not derivations")
    n = T.dim
    mult = right_mult if side == "right" else left_mult
    flats = [tuple(mult(T, basis_vector(n, i)).flat()) for i in range(1, n + 1)]
    flats = [f for f in flats if any(f)]
    return DerivationSpace(n, _maps_from_rows(n, linalg.rref(flats, n * n)))


def is_nilpotent_map(D: LinearMap) -> bool:
    return linalg.is_zero_matrix(linalg.matpow(D.rows, D.dim))


@dataclass(frozen=True)
class TracePencil:
    """p_k(alpha, beta) = trace((alpha A + beta B)^k) for k = 1..n.

    ``coefficients[k-1][i]`` multiplies alpha^i beta^(k-i).
    """

    coefficients: tuple

    def at_beta_one(self, k):
        return poly.normalize(self.coefficients[k - 1])

    def is_zero(self):
        return all(not any(c) for c in self.coefficients)


def trace_pencil(A: LinearMap, B: LinearMap) -> TracePencil:
    """Iterated products of tA + B over Q[t]; homogeneous by construction."""
    if A.dim != B.dim:
        raise UsageError("maps of different sizes")
    n = A.dim
    M = [[poly.normalize((B.rows[i][j], A.rows[i][j])) for j in range(n)] for i in range(n)]
    power = M
    coeffs = []
    for k in range(1, n + 1):
        if k > 1:
            power = _poly_matmul(power, M, n)
        tr = ()
        for i in range(n):
            tr = poly.add(tr, power[i][i])
        coeffs.append(tuple(tr) + (Fraction(0),) * (k + 1 - len(tr)))
    return TracePencil(tuple(coeffs))


def _poly_matmul(X, Y, n):
    out = [[() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            x = X[i][k]
            if not x:
                continue
            Yk = Y[k]
            row = out[i]
            for j in range(n):
                if Yk[j]:
                    row[j] = poly.add(row[j], poly.mul(x, Yk[j]))
    return out


def nil_independent_pair(A: LinearMap, B: LinearMap) -> bool:
    """True iff alpha A + beta B is nilpotent only at alpha = beta = 0 (over R)."""
    pencil = trace_pencil(A, B)
    if pencil.is_zero():
        return False
    if is_nilpotent_map(A) or is_nilpotent_map(B):
        return False
    g = None
    for k in range(1, A.dim + 1):
        p = pencil.at_beta_one(k)
        if p:
            g = p if g is None else poly.gcd(g, p)
    if poly.degree(g) <= 0:
        return True
    return poly.count_real_roots(g) == 0
