"""Structure tensors, brackets, multiplication operators and identity checks.

Indices are 1-based in the public API.  A tensor stores only nonzero
structure constants; a missing (i, j) pair is a zero bracket.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

from . import kernels, linalg
from .errors import UsageError
from .rational import integerize, to_q

ZERO = Fraction(0)


@dataclass(frozen=True)
class LinearMap:
    """Square rational matrix acting on column coordinates.

    Column j is the image of e_j.  ``rows[i][j]`` is entry (i+1, j+1).
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_q(x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise UsageError("LinearMap must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self):
        return len(self.rows)

    @classmethod
    def from_columns(cls, columns):
        return cls(linalg.transpose(tuple(tuple(c) for c in columns)))

    @classmethod
    def identity(cls, n):
        return cls(linalg.identity(n))

    @classmethod
    def zero(cls, n):
        return cls(linalg.zeros(n))

    @classmethod
    def from_entries(cls, n, entries):
        """Build from a sparse {(i, j): value} map with 1-based indices."""
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i - 1][j - 1] += to_q(v)
        return cls(rows)

    @property
    def columns(self):
        return linalg.transpose(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def apply(self, v):
        return linalg.matvec(self.rows, v)

    def __matmul__(self, other):
        return LinearMap(linalg.matmul(self.rows, other.rows))

    def __add__(self, other):
        return LinearMap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return LinearMap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c):
        c = to_q(c)
        return LinearMap(tuple(tuple(c * a for a in r) for r in self.rows))

    def inverse(self):
        return LinearMap(linalg.inverse(self.rows))

    def is_invertible(self):
        return linalg.is_invertible(self.rows)

    def is_zero(self):
        return linalg.is_zero_matrix(self.rows)

    def restrict(self, k):
        """Top-left k x k block (action on e_1..e_k, projected)."""
        return LinearMap(tuple(r[:k] for r in self.rows[:k]))

    def flat(self):
        return [x for r in self.rows for x in r]


@dataclass(frozen=True)
class IdentityViolation:
    triple: tuple
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True, eq=False)
class StructureTensor:
    """Finite-dimensional algebra given by its structure constants.

    ``brackets`` maps (i, j) to a tuple of (k, c) with c != 0, sorted by k.
    Build through :meth:`from_dict` to get normalization.
    """

    dim: int
    brackets: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 0:
            raise UsageError("dimension must be non-negative")
        clean = {}
        for (i, j), terms in self.brackets.items():
            acc = {}
            for k, c in (terms.items() if isinstance(terms, dict) else terms):
                for idx in (i, j, k):
                    if not 1 <= idx <= self.dim:
                        raise UsageError(f"basis index {idx} outside 1..{self.dim}")
                acc[k] = acc.get(k, ZERO) + to_q(c)
            row = tuple((k, c) for k, c in sorted(acc.items()) if c)
            if row:
                clean[(i, j)] = row
        object.__setattr__(self, "brackets", dict(sorted(clean.items())))

    @classmethod
    def from_dict(cls, dim, table):
        return cls(dim, table)

    @classmethod
    def abelian(cls, dim):
        return cls(dim, {})

    def _key(self):
        return (self.dim, tuple(self.brackets.items()))

    def __eq__(self, other):
        return isinstance(other, StructureTensor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"StructureTensor(dim={self.dim}, nnz={self.nnz})"

    @property
    def nnz(self):
        return sum(len(v) for v in self.brackets.values())

    def get(self, i, j):
        return dict(self.brackets.get((i, j), ()))

    def coeff(self, i, j, k):
        return self.get(i, j).get(k, ZERO)

    def triples(self):
        """Sorted (i, j, k, c) for every nonzero constant."""
        return [(i, j, k, c) for (i, j), row in self.brackets.items() for k, c in row]

    @cached_property
    def scaled(self):
        """(D, C): dense 0-based integer tensor equal to D times the constants."""
        n = self.dim
        D = 1
        for _, _, _, c in self.triples():
            D = lcm(D, c.denominator)
        C = [0] * (n * n * n)
        for i, j, k, c in self.triples():
            C[((i - 1) * n + (j - 1)) * n + (k - 1)] = int(c * D)
        return D, C

    def restrict(self, k):
        """Brackets among e_1..e_k, dropping components outside that span."""
        table = {}
        for (i, j), row in self.brackets.items():
            if i <= k and j <= k:
                table[(i, j)] = [(m, c) for m, c in row if m <= k]
        return StructureTensor(k, table)


def basis_vector(n, i):
    return tuple(Fraction(1) if m == i else ZERO for m in range(1, n + 1))


def _as_vector(T, x):
    x = tuple(to_q(c) for c in x)
    if len(x) != T.dim:
        raise UsageError(f"vector of length {len(x)} used with a {T.dim}-dimensional algebra")
    return x


def bracket(T: StructureTensor, x, y):
    """Bilinear extension of the basis brackets."""
    x = _as_vector(T, x)
    y = _as_vector(T, y)
    out = [ZERO] * T.dim
    for (i, j), row in T.brackets.items():
        xi = x[i - 1]
        if not xi:
            continue
        yj = y[j - 1]
        if not yj:
            continue
        s = xi * yj
        for k, c in row:
            out[k - 1] += s * c
    return tuple(out)


def right_mult(T: StructureTensor, x) -> LinearMap:
    """The operator y -> [y, x]."""
    x = _as_vector(T, x)
    n = T.dim
    return LinearMap.from_columns([bracket(T, basis_vector(n, j), x) for j in range(1, n + 1)])


def left_mult(T: StructureTensor, x) -> LinearMap:
    """The operator y -> [x, y]."""
    x = _as_vector(T, x)
    n = T.dim
    return LinearMap.from_columns([bracket(T, x, basis_vector(n, j)) for j in range(1, n + 1)])


def _violations(T, side):
    D, C = T.scaled
    scale = Fraction(1, D * D)
    out = []
    for r, s, t, lhs, rhs in kernels.leibniz_defects(T.dim, C, side):
        out.append(
            IdentityViolation(
                (r + 1, s + 1, t + 1),
                tuple(v * scale for v in lhs),
                tuple(v * scale for v in rhs),
            )
        )
    return out


def check_right_leibniz(T: StructureTensor):
    """Basis triples where [[x,y],z] != [[x,z],y] + [x,[y,z]], lexicographic."""
    return _violations(T, 0)


def check_left_leibniz(T: StructureTensor):
    """Basis triples where [[x,y],z] != [x,[y,z]] - [y,[x,z]], lexicographic."""
    return _violations(T, 1)


def check_leibniz(T, side):
    if side == "right":
        return check_right_leibniz(T)
    if side == "left":
        return check_left_leibniz(T)
    raise UsageError(f"side must be 'left' or 'right', got {side!r}")


def derivation_defects(T: StructureTensor, D: LinearMap):
    """Basis pairs (i, j), 1-based, where the derivation law fails."""
    if D.dim != T.dim:
        raise UsageError("derivation size does not match the algebra")
    S, C = T.scaled
    _, M = integerize(D.flat())
    return [(i + 1, j + 1) for i, j, _, _ in kernels.derivation_defects(T.dim, C, M)]


def is_derivation(T: StructureTensor, D: LinearMap) -> bool:
    return not derivation_defects(T, D)


def operator_law_defects(T: StructureTensor, side):
    """Pairs breaking [R_a,R_b] = R_{[e_b,e_a]} (right) or [L_a,L_b] = L_{[e_a,e_b]} (left).

    This recomputes the Leibniz identities through operator products, an
    independent route from the triple-by-triple check.
    """
    code = {"right": 0, "left": 1}.get(side)
    if code is None:
        raise UsageError(f"side must be 'left' or 'right', got {side!r}")
    _, C = T.scaled
    return [(a + 1, b + 1) for a, b in kernels.commutator_defects(T.dim, C, code)]


def check_lie(T: StructureTensor) -> bool:
    """Antisymmetric, alternating and Leibniz, hence a Lie algebra."""
    for (i, j), row in T.brackets.items():
        if i == j:
            return False
        other = T.get(j, i)
        if any(other.get(k, ZERO) != -c for k, c in row):
            return False
        if len(other) != len(row):
            return False
    return not check_right_leibniz(T)


def transform_basis(T: StructureTensor, P: LinearMap) -> StructureTensor:
    """Rewrite T in the basis whose j-th vector is column j of P."""
    if P.dim != T.dim:
        raise UsageError("basis change size does not match the algebra")
    Pinv = P.inverse()
    cols = P.columns
    n = T.dim
    table = {}
    for i in range(n):
        for j in range(n):
            v = bracket(T, cols[i], cols[j])
            if any(v):
                w = Pinv.apply(v)
                table[(i + 1, j + 1)] = [(k + 1, c) for k, c in enumerate(w) if c]
    return StructureTensor(n, table)
