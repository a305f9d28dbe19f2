from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from leibniz import (
    StructureTensor,
    Subspace,
    check_lie,
    ideal_closure,
    quotient_algebra,
    squares_ideal,
    verify_nilradical_certificate,
)
from leibniz.errors import PreconditionError
from leibniz.families import AlgebraDescriptor, build, sample_params
from leibniz.quotients import is_two_sided_ideal

from conftest import tensors


def L2(n):
    return build(AlgebraDescriptor("L2", n))


def test_closure_examples():
    T = L2(5)
    assert ideal_closure(T, Subspace.coordinate(5, [2])) == Subspace.coordinate(5, [2])
    assert ideal_closure(T, Subspace.full(5)) == Subspace.full(5)
    assert ideal_closure(T, Subspace.coordinate(5, [3])) == Subspace.coordinate(5, [2, 3, 4, 5])


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_squares_ideal_of_l2(n):
    assert squares_ideal(L2(n)) == Subspace.coordinate(n, [2])


def test_squares_ideal_of_lie_is_zero():
    T = StructureTensor(3, {(1, 2): [(3, 1)], (2, 1): [(3, -1)]})
    assert squares_ideal(T).dim == 0


def test_squares_ideal_of_g1():
    T = build(AlgebraDescriptor("G1", 4, {"a": 3}))
    assert squares_ideal(T) == Subspace.coordinate(5, [2])


def test_quotient_of_l2_by_squares():
    Qt = quotient_algebra(L2(5), Subspace.coordinate(5, [2]))
    assert Qt == StructureTensor(4, {(1, 2): [(3, -1)], (1, 3): [(4, -1)], (2, 1): [(3, 1)], (3, 1): [(4, 1)]})
    assert check_lie(Qt)


def test_trivial_quotients():
    T = L2(5)
    assert quotient_algebra(T, Subspace.zero(5)) == T
    assert quotient_algebra(T, Subspace.full(5)).dim == 0


def test_quotient_needs_ideal():
    with pytest.raises(PreconditionError):
        quotient_algebra(L2(5), Subspace.coordinate(5, [3]))


def test_certificate_examples():
    G = build(AlgebraDescriptor("G1", 4, {"a": 1}))
    c = verify_nilradical_certificate(G, Subspace.coordinate(5, [1, 2, 3, 4]))
    assert c.passed and c.dim_bound
    assert verify_nilradical_certificate(L2(5), Subspace.full(5)).passed
    bad = verify_nilradical_certificate(G, Subspace.coordinate(5, [1, 2, 3]))
    assert not bad.is_ideal and not bad.passed
    assert bad.to_json()["note"]


@pytest.mark.parametrize("tag", ["G1", "G2", "G3", "G4", "Gc2", "L1", "Ll2", "Ll3", "Ll4", "Lc2"])
def test_certificate_on_catalog(tag):
    for n in (5, 6):
        d = sample_params(tag, n, 0)
        T = build(d)
        cert = verify_nilradical_certificate(T, Subspace.coordinate(T.dim, range(1, n + 1)))
        assert cert.passed and cert.dim_bound, cert


@pytest.mark.parametrize("tag", ["L2", "G1", "Gc2", "L1", "Lc2", "RThm2Case1", "LThm2Case3"])
def test_squares_quotient_is_lie(tag):
    for n in (5, 6):
        T = build(sample_params(tag, n, 2))
        assert check_lie(quotient_algebra(T, squares_ideal(T)))


@given(tensors(max_dim=4), st.data())
def test_closure_is_smallest_ideal(T, data):
    k = data.draw(st.integers(1, T.dim))
    S = Subspace.coordinate(T.dim, [k])
    I = ideal_closure(T, S)
    assert I.contains(S) and is_two_sided_ideal(T, I)
    assert ideal_closure(T, I) == I
