"""Dense univariate polynomials over Q.

A polynomial is a tuple of Fractions, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)


def normalize(p):
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def degree(p):
    return len(p) - 1  # -1 for the zero polynomial


def add(p, q):
    n = max(len(p), len(q))
    return normalize((p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n))


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return normalize(out)


def divmod_poly(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [ZERO] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r.pop()
        while r and not r[-1]:
            r.pop()
    return normalize(quot), normalize(r)


def monic(p):
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def gcd(p, q):
    p, q = normalize(p), normalize(q)
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def derivative(p):
    return normalize(i * c for i, c in enumerate(p) if i)


def squarefree(p):
    """p / gcd(p, p'): same roots, all simple."""
    p = normalize(p)
    if degree(p) <= 0:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0])


def evaluate(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_chain(p):
    p = normalize(p)
    chain = [p, derivative(p)]
    while chain[-1]:
        r = divmod_poly(chain[-2], chain[-1])[1]
        chain.append(neg(r))
    chain.pop()
    return chain


def _sign_changes(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(x):
    return (x > 0) - (x < 0)


def count_real_roots(p):
    """Number of distinct real roots of p (Sturm's theorem on the whole line)."""
    p = normalize(p)
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    if degree(p) == 0:
        return 0
    chain = sturm_chain(squarefree(p))
    at_pos = [_sign(q[-1]) for q in chain]
    at_neg = [_sign(q[-1]) * (-1 if degree(q) % 2 else 1) for q in chain]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def count_real_roots_in(p, lo, hi):
    """Distinct real roots in the half-open interval (lo, hi]."""
    p = normalize(p)
    if degree(p) <= 0:
        return 0
    chain = sturm_chain(squarefree(p))
    lo_s = _sign_changes([_sign(evaluate(q, Fraction(lo))) for q in chain])
    hi_s = _sign_changes([_sign(evaluate(q, Fraction(hi))) for q in chain])
    return lo_s - hi_s
