"""Independent reference computations used to cross-check the main routes.

Nothing here shares code with the kernels: the derivation oracle goes
through sympy's dense nullspace, the root oracle through the rational root
theorem.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import sympy

from .core import StructureTensor


def dense_derivation_dim(T: StructureTensor) -> int:
    """dim Der(T) from a dense sympy system in the n^2 entries of d."""
    n = T.dim
    d = sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"d_{i}_{j}"))
    unknowns = list(d)
    c = [[[sympy.Rational(0)] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, v in T.triples():
        c[i - 1][j - 1][k - 1] = sympy.Rational(v.numerator, v.denominator)
    eqs = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                lhs = sum(c[i][j][k] * d[m, k] for k in range(n))
                rhs = sum(d[p, i] * c[p][j][m] for p in range(n)) + sum(d[q, j] * c[i][q][m] for q in range(n))
                e = sympy.expand(lhs - rhs)
                if e != 0:
                    eqs.append(e)
    if not eqs:
        return n * n
    A = sympy.Matrix([[e.coeff(u) for u in unknowns] for e in eqs])
    return len(A.nullspace())


def _divisors(m):
    m = abs(m)
    out = set()
    for k in range(1, isqrt(m) + 1):
        if m % k == 0:
            out.add(k)
            out.add(m // k)
    return out


def rational_roots(coeffs):
    """Distinct rational roots of a polynomial (low degree first, rational coefficients)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return sorted(roots)
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)
