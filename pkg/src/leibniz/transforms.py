"""Basis-change steps, shape patterns and replay of absorption chains."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import families as F
from .core import LinearMap, StructureTensor, check_leibniz, transform_basis
from .errors import InvalidTransformError, UsageError
from .rational import fmt_q, to_q


@dataclass(frozen=True)
class TransformStep:
    description: str
    map: LinearMap

    def __post_init__(self):
        if not self.map.is_invertible():
            raise InvalidTransformError(f"step {self.description!r} is singular")


def absorption_step(kind, coeffs, description=None) -> TransformStep:
    """Identity map except at the named columns.

    kind "shift": coeffs = {"dim": d, "shifts": {a: {k: c}}} gives e'_a = e_a + sum c e_k.
    kind "scale": coeffs = {"dim": d, "factors": {a: f}} gives e'_a = f e_a.
    """
    try:
        dim = int(coeffs["dim"])
    except (KeyError, TypeError, ValueError):
        raise InvalidTransformError("absorption step needs an integer 'dim'") from None
    cols = [[Fraction(int(r == c)) for r in range(dim)] for c in range(dim)]
    if kind == "shift":
        auto = []
        for a, terms in sorted(coeffs.get("shifts", {}).items()):
            _check_index(a, dim)
            parts = []
            for k, c in sorted(terms.items()):
                _check_index(k, dim)
                if k == a:
                    raise InvalidTransformError(f"shift of e_{a} by itself; use a scale step")
                c = to_q(c)
                cols[a - 1][k - 1] += c
                if c:
                    parts.append(f"{fmt_q(c)} e_{k}")
            auto.append(f"e'_{a} = e_{a}" + "".join(f" + {p}" for p in parts))
        auto = ", ".join(auto)
    elif kind == "scale":
        auto = []
        for a, f in sorted(coeffs.get("factors", {}).items()):
            _check_index(a, dim)
            f = to_q(f)
            if not f:
                raise InvalidTransformError(f"zero scale factor for e_{a}")
            cols[a - 1][a - 1] = f
            auto.append(f"e'_{a} = {fmt_q(f)} e_{a}")
        auto = ", ".join(auto)
    else:
        raise InvalidTransformError(f"unknown step kind {kind!r}")
    return TransformStep(description or auto or "identity", LinearMap.from_columns(cols))


def _check_index(i, dim):
    if not isinstance(i, int) or not 1 <= i <= dim:
        raise InvalidTransformError(f"basis index {i!r} outside 1..{dim}")


def compose_steps(steps) -> LinearMap:
    """Single map equivalent to applying ``steps`` in order (column convention: P1 P2 ...)."""
    if not steps:
        raise UsageError("no steps to compose")
    P = steps[0].map
    for s in steps[1:]:
        P = P @ s.map
    return P


# --------------------------------------------------------------------------
# shape patterns


@dataclass(frozen=True)
class ShapePattern:
    dim: int
    zero_set: frozenset
    fixed_set: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.zero_set & set(self.fixed_set):
            raise UsageError("zero and fixed positions overlap")

    def mismatches(self, T: StructureTensor):
        if T.dim != self.dim:
            raise UsageError(f"pattern dimension {self.dim} differs from tensor dimension {T.dim}")
        out = []
        for (i, j, k) in sorted(self.zero_set):
            c = T.coeff(i, j, k)
            if c:
                out.append(((i, j, k), Fraction(0), c))
        for (i, j, k), v in sorted(self.fixed_set.items()):
            c = T.coeff(i, j, k)
            if c != v:
                out.append(((i, j, k), v, c))
        return out

    def matches(self, T):
        return not self.mismatches(T)

    @classmethod
    def of_tensor(cls, T: StructureTensor):
        """Pattern pinning every constant of T exactly."""
        fixed = {(i, j, k): c for i, j, k, c in T.triples()}
        return cls(T.dim, _complement(T.dim, fixed), fixed)


def _complement(dim, support):
    r = range(1, dim + 1)
    return frozenset((i, j, k) for i in r for j in r for k in r if (i, j, k) not in support)


def family_pattern(family, n, pinned, free) -> ShapePattern:
    """Shape of a catalog table with ``free`` parameters left unconstrained.

    Positions whose value involves a free parameter are neither zero nor
    fixed; every other position is pinned to its exact value.
    """
    fam = F.get_family(family)
    names = [name for name, _ in fam.params(n)]
    unknown = set(free) - set(names)
    if unknown:
        raise UsageError(f"{family}: unknown free parameter(s) {sorted(unknown)}")
    params = {}
    for name in names:
        if name in free:
            params[name] = sympy.Symbol(name)
        elif name in pinned:
            q = to_q(pinned[name])
            params[name] = sympy.Rational(q.numerator, q.denominator)
        else:
            raise UsageError(f"{family}: parameter {name} is neither pinned nor free")
    dim, rows = F.raw_table(family, n, params)
    fixed, loose = {}, set()
    for (i, j), row in rows.items():
        for k, v in row.items():
            v = sympy.simplify(v)
            if v.free_symbols:
                loose.add((i, j, k))
            elif v != 0:
                fixed[(i, j, k)] = Fraction(int(v.p), int(v.q))
    return ShapePattern(dim, _complement(dim, set(fixed) | loose), fixed)


# --------------------------------------------------------------------------
# replay


@dataclass(frozen=True)
class StepRecord:
    description: str
    nilradical_intact: bool
    identity_holds: bool


@dataclass(frozen=True)
class ChainReport:
    steps: tuple
    final: StructureTensor
    mismatches: tuple

    @property
    def ok(self):
        return not self.mismatches and all(s.nilradical_intact and s.identity_holds for s in self.steps)


def nilradical_intact(T: StructureTensor, n) -> bool:
    """Brackets among e_1..e_n are exactly those of L2(n), with nothing leaking outside."""
    ref = F.build(F.AlgebraDescriptor("L2", n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if T.get(i, j) != ref.get(i, j):
                return False
    return True


def replay_chain(start: F.AlgebraDescriptor, steps, target: ShapePattern, side=None) -> ChainReport:
    T = F.build(start)
    side = side or F.get_family(start.family).side
    n = start.n
    records = []
    for s in steps:
        if s.map.dim != T.dim:
            raise UsageError(f"step {s.description!r} has size {s.map.dim}, algebra has {T.dim}")
        T = transform_basis(T, s.map)
        ok_side = True if side == "both" else not check_leibniz(T, side)
        records.append(StepRecord(s.description, nilradical_intact(T, n), ok_side))
    return ChainReport(tuple(records), T, tuple(target.mismatches(T)))


def verify_chain(start, steps, target_pattern) -> bool:
    return replay_chain(start, steps, target_pattern).ok


def iso_witness_check(A: StructureTensor, B: StructureTensor, P: LinearMap) -> bool:
    if A.dim != B.dim or P.dim != A.dim:
        raise UsageError("isomorphism witness needs equal dimensions")
    if not P.is_invertible():
        raise InvalidTransformError("witness map is singular")
    return transform_basis(A, P) == B


# --------------------------------------------------------------------------
# absorption chains of the general extensions


a_, b_ = F.a_, F.b_


@dataclass(frozen=True)
class Chain:
    name: str
    start: F.AlgebraDescriptor
    steps: tuple
    target: ShapePattern
    target_family: str


def _shift(dim, a, terms, text):
    return absorption_step("shift", {"dim": dim, "shifts": {a: terms}}, text)


def _scale(dim, factors, text):
    return absorption_step("scale", {"dim": dim, "factors": factors}, text)


# parameters the absorption renames back; the rest stay pinned
_FREE_RIGHT = {
    1: [a_(2, 1), a_(4, 1), b_(2, 1), F.A2N],
    2: [a_(2, 1), a_(4, 1), b_(2, 1), F.ANN],
    3: [a_(2, 1), b_(2, 1)],
    4: [a_(2, 1)],
}
_FREE_LEFT = {
    1: [a_(2, 1), b_(2, 1), b_(2, 3), F.A2N],
    2: [a_(2, 1), b_(2, 1), b_(2, 3), F.ANN],
    3: [b_(2, 1)],
    4: [a_(2, 1), b_(2, 3)],
}


def absorption_chain(side, case, desc: F.AlgebraDescriptor) -> Chain:
    """Steps taking the general form of ``case`` to its absorbed form."""
    if side not in ("right", "left"):
        raise UsageError(f"side must be 'left' or 'right', got {side!r}")
    pre = "RThm1" if side == "right" else "LThm1"
    if desc.family != f"{pre}Case{case}":
        raise UsageError(f"chain for {side} case ({case}) starts from {pre}Case{case}, got {desc.family}")
    n, p = desc.n, desc.params
    N = n + 1
    d = F.derived_values(desc.family, n, p)
    steps = []
    A43 = d.get("A_{4,3}", p.get(a_(4, 3)))
    if A43 is None:
        A43 = 0
    steps.append(_shift(N, N, {1: -A43}, f"e'_{{n+1}} = e_{{n+1}} - ({fmt_q(A43)}) e_1"))
    if side == "right":
        terms = {k: p[a_(k + 1, 1)] for k in range(3, n)}
        steps.append(_shift(N, N, terms, "e'_{n+1} = e_{n+1} + sum_{k=3}^{n-1} a_{k+1,1} e_k"))
    else:
        if case == 4:
            terms = {k: p[a_(k + 1, 1)] for k in range(3, n)}
        else:
            terms = {3: d["A_{4,1}"]}
            terms.update({k: p[a_(k + 1, 1)] for k in range(4, n)})
        steps.append(_shift(N, N, terms, "e'_{n+1} = e_{n+1} + A_{4,1} e_3 + sum_{k} a_{k+1,1} e_k"))
    if case in (2, 3, 4):
        # the shifts above rename a_{2,n+1}; clear the renamed value
        T = F.build(desc)
        for st in steps:
            T = transform_basis(T, st.map)
        a2 = T.coeff(N, N, 2)
        if case == 2:
            c = a2 / ((n - 4) * p["a"])
            c = c if side == "right" else -c
        elif case == 3:
            c = -a2 / p["b"] if side == "right" else a2 / p["b"]
        else:
            c = -a2 / (2 * p["a"]) if side == "right" else a2 / p["a"]
        steps.append(_shift(N, N, {2: c}, f"e'_{{n+1}} = e_{{n+1}} + ({fmt_q(c)}) e_2"))
    target = f"{'RThm2' if side == 'right' else 'LThm2'}Case{case}"
    free = (_FREE_RIGHT if side == "right" else _FREE_LEFT)[case]
    names = [name for name, _ in F.get_family(target).params(n)]
    pinned = {k: v for k, v in p.items() if k in names and k not in free}
    pattern = family_pattern(target, n, pinned, [f for f in free if f in names])
    return Chain(f"{side} absorption, case ({case})", desc, tuple(steps), pattern, target)


def _square_root(q: Fraction):
    num, den = q.numerator, q.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(m):
    from math import isqrt

    if m < 0:
        return None
    r = isqrt(m)
    return r if r * r == m else None


def sample_square_ratio_start(n, seed) -> F.AlgebraDescriptor:
    """Absorbed right case (3) with a_{5,3} = ±q^2 b, so the final scaling stays rational."""
    base = F.sample_params("RThm2Case3", n, seed)
    rng = random.Random(f"square|{n}|{seed}")
    q = Fraction(rng.randint(0, 4), rng.choice((1, 2, 3)))
    sign = rng.choice((1, -1))
    p = dict(base.params)
    p[a_(5, 3)] = sign * q * q * p["b"]
    return F.AlgebraDescriptor("RThm2Case3", n, p)


def normalization_chain_case3(desc: F.AlgebraDescriptor) -> Chain:
    """Absorbed right case (3) to the canonical g_{n+1,4} with eps = sign(a_{5,3}/b)."""
    if desc.family != "RThm2Case3":
        raise UsageError("normalization to g_{n+1,4} starts from RThm2Case3")
    n, p = desc.n, desc.params
    N = n + 1
    b = p["b"]
    steps = [
        absorption_step(
            "shift",
            {"dim": N, "shifts": {1: {2: -(p[a_(2, 1)] + p[b_(2, 1)]) / b}, 3: {2: -p[b_(2, 1)] / b}}},
            "e'_1 = e_1 - ((a_{2,1}+b_{2,1})/b) e_2, e'_3 = e_3 - (b_{2,1}/b) e_2",
        ),
        _scale(N, {N: 1 / b}, "e'_{n+1} = e_{n+1}/b"),
    ]
    ratio = p.get(a_(5, 3), Fraction(0)) / b
    eps = Fraction((ratio > 0) - (ratio < 0))
    if ratio:
        s = _square_root(abs(ratio))
        if s is None:
            raise UsageError("a_{5,3}/b is not ± a rational square; the scaling is irrational")
        factors = {1: s, 2: s * s}
        factors.update({k: s ** (k - 2) for k in range(3, n + 1)})
        steps.append(_scale(N, factors, "e'_1 = s e_1, e'_2 = s^2 e_2, e'_k = s^{k-2} e_k with s^2 = |a_{5,3}/b|"))
    pinned = {"epsilon": eps}
    free = [F.bk(m) for m in range(1, n - 4)]
    pattern = family_pattern("G4", n, pinned, free)
    return Chain("right normalization, case (3) to g_{n+1,4}", desc, tuple(steps), pattern, "G4")


def chain_to_json(chain: Chain):
    from .io import linear_map_to_json

    return [{"description": s.description, "map": linear_map_to_json(s.map)} for s in chain.steps]


def normalization_chain_case1(desc: F.AlgebraDescriptor, order="ascending") -> Chain:
    """Absorbed right case (1) with b != 0 to g_{n+1,1} with parameter b/a.

    The band a_{k,3} of [e_i, e_{n+1}] is cleared by uniform shifts
    e'_i = e_i + c e_{i+d}; each shift renames the longer-range entries, so
    the offsets d are taken in ``order`` and every coefficient is read from
    the current table.  Only ascending order clears the band for n >= 7.
    """
    if desc.family != "RThm2Case1":
        raise UsageError("normalization to g_{n+1,1} starts from RThm2Case1")
    if order not in ("ascending", "descending"):
        raise UsageError(f"order must be 'ascending' or 'descending', got {order!r}")
    n, p = desc.n, desc.params
    a, b = p["a"], p["b"]
    if b == 0:
        raise UsageError("b = 0 leads to g_{n+1,2}, not g_{n+1,1}")
    N = n + 1
    T = F.build(desc)
    steps = []

    def push(step):
        nonlocal T
        steps.append(step)
        T = transform_basis(T, step.map)

    offsets = list(range(2, n - 2))
    if order == "descending":
        offsets.reverse()
    for d in offsets:
        c = -T.coeff(3, N, 3 + d) / (d * a)
        if c:
            shifts = {i: {i + d: c} for i in range(3, n - d + 1)}
            push(absorption_step("shift", {"dim": N, "shifts": shifts}, f"e'_i = e_i + ({fmt_q(c)}) e_{{i+{d}}}"))
    c1 = -(T.coeff(N, 1, 2) + (2 * a - b) * T.coeff(3, N, 2) / a) / a
    c3 = -T.coeff(3, N, 2) / a
    push(absorption_step("shift", {"dim": N, "shifts": {1: {2: c1}, 3: {2: c3}}},
                         "e'_1 = e_1 + c_1 e_2, e'_3 = e_3 - (a_{2,3}/a) e_2"))
    terms = {4: -T.coeff(N, N, 2) / a}
    terms.update({k: T.coeff(1, N, k + 1) for k in range(5, n)})
    push(_shift(N, N, terms, "e'_{n+1} = e_{n+1} - (a_{2,n+1}/a) e_4 + sum_{k=5}^{n-1} a_{k+1,1} e_k"))
    push(_scale(N, {N: 1 / a}, "e'_{n+1} = e_{n+1}/a"))
    c = T.coeff(1, N, 5) if n >= 5 else 0
    if c:
        push(_shift(N, 1, {5: -c * a / b}, "e'_1 = e_1 - (c/b) e_5"))
    pattern = family_pattern("G1", n, {"a": b / a}, [])
    return Chain("right normalization, case (1) to g_{n+1,1}", desc, tuple(steps), pattern, "G1")
