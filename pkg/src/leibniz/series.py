"""Subspaces in canonical RREF, characteristic series, center, nilpotency.

Series use the L^0 = L convention: ``dims[k]`` is dim L^k (resp. L^(k)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import kernels, linalg
from .core import StructureTensor
from .errors import UsageError
from .rational import integerize, to_q


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of Q^ambient_dim stored by its reduced row echelon basis."""

    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_q(x) for x in r) for r in self.basis)
        if any(len(r) != self.ambient_dim for r in rows):
            raise UsageError("row length does not match the ambient dimension")
        object.__setattr__(self, "basis", linalg.rref(rows, self.ambient_dim))

    @classmethod
    def span(cls, ambient_dim, vectors):
        return cls(ambient_dim, tuple(vectors))

    @classmethod
    def _from_int(cls, ambient_dim, int_rows):
        # already reduced by the kernel; skip the second pass
        obj = object.__new__(cls)
        object.__setattr__(obj, "ambient_dim", ambient_dim)
        object.__setattr__(obj, "basis", tuple(linalg.rref_from_int(r) for r in int_rows))
        obj.__dict__["int_rows"] = [list(r) for r in int_rows]
        return obj

    @classmethod
    def full(cls, n):
        return cls(n, linalg.identity(n))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def coordinate(cls, n, indices):
        """span{e_i : i in indices}, 1-based."""
        return cls(n, tuple(tuple(Fraction(int(m == i)) for m in range(1, n + 1)) for i in indices))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def rows(self):
        return self.basis

    @cached_property
    def int_rows(self):
        return [integerize(r)[1] for r in self.basis]

    @property
    def pivots(self):
        return linalg.pivots(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(ambient={self.ambient_dim}, dim={self.dim})"

    def __add__(self, other):
        _same_ambient(self, other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def contains_vector(self, v):
        if not any(v):
            return True
        return linalg.rank(self.basis + (tuple(v),), self.ambient_dim) == self.dim

    def contains(self, other):
        _same_ambient(self, other)
        if other.dim > self.dim:
            return False
        return linalg.rank(self.basis + other.basis, self.ambient_dim) == self.dim


def _same_ambient(A, B):
    if A.ambient_dim != B.ambient_dim:
        raise UsageError("subspaces live in different ambient spaces")


@dataclass(frozen=True)
class SeriesResult:
    dims: tuple
    stabilized: bool


def product_space(T: StructureTensor, A: Subspace, B: Subspace) -> Subspace:
    """span{[a, b] : a in basis(A), b in basis(B)}."""
    n = T.dim
    if A.ambient_dim != n or B.ambient_dim != n:
        raise UsageError("subspace ambient dimension does not match the algebra")
    if not A.dim or not B.dim:
        return Subspace.zero(n)
    _, C = T.scaled
    return Subspace._from_int(n, kernels.product_span(n, C, A.int_rows, B.int_rows))


def _series(T, step, max_terms=None):
    term = Subspace.full(T.dim)
    dims = [term.dim]
    terms = [term]
    while term.dim:
        nxt = step(term)
        if nxt == term:
            dims.append(nxt.dim)
            return SeriesResult(tuple(dims), True), terms
        term = nxt
        dims.append(term.dim)
        terms.append(term)
    return SeriesResult(tuple(dims), False), terms


def lower_central_terms(T):
    full = Subspace.full(T.dim)
    return _series(T, lambda L: product_space(T, L, full))[1]


def derived_terms(T):
    return _series(T, lambda L: product_space(T, L, L))[1]


def lower_central_series(T: StructureTensor) -> SeriesResult:
    full = Subspace.full(T.dim)
    return _series(T, lambda L: product_space(T, L, full))[0]


def derived_series(T: StructureTensor) -> SeriesResult:
    return _series(T, lambda L: product_space(T, L, L))[0]


def center(T: StructureTensor) -> Subspace:
    """Nullspace of x -> ([x, e_i], [e_i, x]) over all i."""
    n = T.dim
    rows = []
    # coefficient of e_k in [x, e_i] is sum_m x_m c^k_{m i}; likewise for [e_i, x]
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            rows.append(tuple(T.coeff(m, i, k) for m in range(1, n + 1)))
            rows.append(tuple(T.coeff(i, m, k) for m in range(1, n + 1)))
    rows = [r for r in rows if any(r)]
    return Subspace(n, tuple(linalg.nullspace(rows, n)))


def is_nilpotent(T: StructureTensor) -> bool:
    return not lower_central_series(T).stabilized


def is_solvable(T: StructureTensor) -> bool:
    return not derived_series(T).stabilized


def nil_index(T: StructureTensor):
    """Minimal m with L^m = 0 (L^0 = L), or None if T is not nilpotent."""
    ls = lower_central_series(T)
    if ls.stabilized:
        return None
    return len(ls.dims) - 1


def is_quasi_filiform(T: StructureTensor) -> bool:
    """L^{n-3} != 0 and L^{n-2} = 0, with L^0 = L."""
    n = T.dim
    if n < 4:
        raise UsageError("quasi-filiform test needs dimension at least 4")
    ls = lower_central_series(T)
    if ls.stabilized:
        return False

    def dim_at(k):
        return ls.dims[k] if k < len(ls.dims) else 0

    return dim_at(n - 3) != 0 and dim_at(n - 2) == 0
