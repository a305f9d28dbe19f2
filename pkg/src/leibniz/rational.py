"""Exact rational scalars.

``fractions.Fraction`` is the scalar type everywhere; this module only adds
parsing and the "p/q" string encoding used by the JSON formats.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Q = Fraction


def to_q(value) -> Fraction:
    """Coerce int, Fraction or a "p/q" / "p" string to a Fraction.

    Floats are rejected: the core never rounds.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    if isinstance(value, float):
        raise TypeError("floating point scalars are not allowed")
    # sympy Rational and friends
    p, q = getattr(value, "p", None), getattr(value, "q", None)
    if isinstance(p, int) and isinstance(q, int):
        return Fraction(p, q)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fmt_q(x: Fraction) -> str:
    """Lowest-terms string: "p" for integers, "p/q" otherwise."""
    x = to_q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, v.denominator)
    return d


def integerize(values):
    """Scale a sequence of Fractions by the lcm of denominators.

    Returns ``(scale, ints)`` with ``ints[i] == values[i] * scale``.
    """
    values = list(values)
    d = common_denominator(values)
    return d, [int(v * d) for v in values]
