from fractions import Fraction as Q

from hypothesis import given, strategies as st

from leibniz import poly
from leibniz.oracles import rational_roots

from conftest import rationals


def from_roots(roots):
    p = (Q(1),)
    for r in roots:
        p = poly.mul(p, (-r, Q(1)))
    return p


def test_gcd_and_division():
    p = from_roots([Q(1), Q(2), Q(2)])
    q = from_roots([Q(2), Q(5)])
    assert poly.gcd(p, q) == (Q(-2), Q(1))
    quo, rem = poly.divmod_poly(p, q)
    assert poly.add(poly.mul(quo, q), rem) == poly.normalize(p)


def test_sturm_counts():
    assert poly.count_real_roots(from_roots([Q(-1), Q(1, 2), Q(3)])) == 3
    assert poly.count_real_roots((Q(1), Q(0), Q(1))) == 0
    assert poly.count_real_roots((Q(-2), Q(0), Q(1))) == 2
    assert poly.count_real_roots(from_roots([Q(1), Q(1)])) == 1


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5, unique=True), st.lists(rationals, max_size=2))
def test_sturm_matches_rational_root_oracle(int_roots, extra):
    # (x^2 + 1) factors keep some roots complex
    p = from_roots([Q(r) for r in int_roots])
    for _ in extra:
        p = poly.mul(p, (Q(1), Q(0), Q(1)))
    assert poly.count_real_roots(p) == len(rational_roots(p)) == len(int_roots)


@given(st.lists(rationals, min_size=1, max_size=5), st.lists(rationals, min_size=1, max_size=4))
def test_divmod_identity(p, q):
    p, q = poly.normalize(p), poly.normalize(q)
    if not q:
        return
    quo, rem = poly.divmod_poly(p, q)
    assert poly.add(poly.mul(quo, q), rem) == p
    assert poly.degree(rem) < poly.degree(q)
