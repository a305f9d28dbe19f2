"""Two-sided ideals, quotients, the squares ideal and nilradical certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import StructureTensor, basis_vector, bracket
from .errors import PreconditionError, UsageError
from .series import Subspace, product_space


def _check_ambient(T, S):
    if S.ambient_dim != T.dim:
        raise UsageError("subspace ambient dimension does not match the algebra")


def is_two_sided_ideal(T: StructureTensor, S: Subspace) -> bool:
    _check_ambient(T, S)
    full = Subspace.full(T.dim)
    return S.contains(product_space(T, S, full)) and S.contains(product_space(T, full, S))


def ideal_closure(T: StructureTensor, S: Subspace) -> Subspace:
    """Smallest two-sided ideal containing S (fixpoint of S + [S,L] + [L,S])."""
    _check_ambient(T, S)
    full = Subspace.full(T.dim)
    cur = S
    while True:
        nxt = cur + product_space(T, cur, full) + product_space(T, full, cur)
        if nxt == cur:
            return cur
        cur = nxt


def squares_ideal(T: StructureTensor) -> Subspace:
    """Ideal generated by all [x, x], via the polarizations [e_i,e_j] + [e_j,e_i]."""
    n = T.dim
    gens = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            v = [Fraction(0)] * n
            for k, c in T.get(i, j).items():
                v[k - 1] += c
            if i != j:
                for k, c in T.get(j, i).items():
                    v[k - 1] += c
            if any(v):
                gens.append(tuple(v))
    return ideal_closure(T, Subspace(n, tuple(gens)))


def _reduce(v, I: Subspace):
    v = list(v)
    for row, p in zip(I.basis, I.pivots):
        c = v[p]
        if c:
            for m in range(len(v)):
                v[m] -= c * row[m]
    return v


def quotient_algebra(T: StructureTensor, I: Subspace) -> StructureTensor:
    """T / I on the standard basis vectors at the non-pivot positions of I."""
    _check_ambient(T, I)
    if not is_two_sided_ideal(T, I):
        raise PreconditionError("the subspace is not a two-sided ideal")
    n = T.dim
    piv = set(I.pivots)
    keep = [m for m in range(n) if m not in piv]
    pos = {m: q for q, m in enumerate(keep)}
    table = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            v = _reduce(bracket(T, basis_vector(n, i + 1), basis_vector(n, j + 1)), I)
            row = [(pos[m] + 1, c) for m, c in enumerate(v) if c and m in pos]
            if row:
                table[(a + 1, b + 1)] = row
    return StructureTensor(len(keep), table)


def _internal_lower_central(T, S: Subspace):
    """dims of S, [S,S], [[S,S],S], ... inside the ambient algebra."""
    dims = [S.dim]
    cur = S
    while cur.dim:
        nxt = product_space(T, cur, S)
        if nxt == cur:
            return dims + [nxt.dim], False
        cur = nxt
        dims.append(cur.dim)
    return dims, True


def is_subalgebra(T, S: Subspace) -> bool:
    return S.contains(product_space(T, S, S))


@dataclass(frozen=True)
class IdealCertificate:
    """Necessary conditions for N to be the nilradical of T.

    Check (c) asks that N + <v> is not a nilpotent subalgebra for every
    standard complement vector v; it is necessary, not sufficient, for
    maximality.
    """

    is_ideal: bool
    is_nilpotent_subalgebra: bool
    complement_nonnilpotent: bool
    dim_bound: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.is_ideal and self.is_nilpotent_subalgebra and self.complement_nonnilpotent

    def to_json(self):
        return {
            "passed": self.passed,
            "is_ideal": self.is_ideal,
            "is_nilpotent_subalgebra": self.is_nilpotent_subalgebra,
            "complement_nonnilpotent": self.complement_nonnilpotent,
            "dim_bound": self.dim_bound,
            "witnesses": self.witnesses,
            "note": "complement check is necessary but not sufficient for maximality",
        }


def verify_nilradical_certificate(T: StructureTensor, N: Subspace) -> IdealCertificate:
    _check_ambient(T, N)
    n = T.dim
    witnesses = {}
    full = Subspace.full(n)
    is_ideal = True
    for side, prod in (("right", product_space(T, N, full)), ("left", product_space(T, full, N))):
        if not N.contains(prod):
            is_ideal = False
            for row in prod.basis:
                if not N.contains_vector(row):
                    witnesses[f"ideal_{side}"] = [str(c) for c in row]
                    break
    dims, nil = _internal_lower_central(T, N)
    if not nil:
        witnesses["nilradical_series"] = dims
    comp_ok = True
    piv = set(N.pivots)
    for m in range(n):
        if m in piv:
            continue
        S = N + Subspace(n, (basis_vector(n, m + 1),))
        if not is_subalgebra(T, S):
            continue
        sdims, snil = _internal_lower_central(T, S)
        if snil:
            comp_ok = False
            witnesses[f"nilpotent_extension_e{m + 1}"] = sdims
    return IdealCertificate(is_ideal, nil, comp_ok, 2 * N.dim >= n, witnesses)
