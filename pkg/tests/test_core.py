from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from leibniz import (
    LinearMap,
    StructureTensor,
    basis_vector,
    bracket,
    check_left_leibniz,
    check_lie,
    check_right_leibniz,
    is_derivation,
    left_mult,
    operator_law_defects,
    right_mult,
    transform_basis,
)
from leibniz.errors import InvalidTransformError, UsageError
from leibniz.families import AlgebraDescriptor, build

from conftest import invertible_maps, rationals, tensors, vectors


def L2(n):
    return build(AlgebraDescriptor("L2", n))


def e(n, i):
    return basis_vector(n, i)


def vec(n, **coords):
    v = [Q(0)] * n
    for k, c in coords.items():
        v[int(k[1:]) - 1] = Q(c)
    return tuple(v)


def test_l2_brackets():
    T = L2(5)
    assert bracket(T, e(5, 3), e(5, 1)) == e(5, 4)
    assert bracket(T, e(5, 1), e(5, 3)) == vec(5, e2=1, e4=-1)
    assert bracket(T, e(5, 2), e(5, 1)) == vec(5)


def test_l2_right_mult_e1_matrix():
    R = right_mult(L2(6), e(6, 1))
    want = [[Q(0)] * 6 for _ in range(6)]
    want[1][0] = Q(1)
    for i in range(3, 6):
        want[i][i - 1] = Q(1)
    assert [list(r) for r in R.rows] == want


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_l2_e2_acts_as_zero(n):
    assert right_mult(L2(n), e(n, 2)).is_zero()
    assert left_mult(L2(n), e(n, 2)).is_zero()


@given(tensors())
def test_mult_by_zero_vector(T):
    z = (Q(0),) * T.dim
    assert right_mult(T, z).is_zero() and left_mult(T, z).is_zero()


def test_l2_is_left_and_right():
    T = L2(6)
    assert check_right_leibniz(T) == [] and check_left_leibniz(T) == []


def test_abelian_has_no_violations():
    T = StructureTensor.abelian(3)
    assert check_right_leibniz(T) == [] and check_left_leibniz(T) == []


def test_idempotent_violation_reported():
    T = StructureTensor(1, {(1, 1): [(1, 1)]})
    (v,) = check_right_leibniz(T)
    assert v.triple == (1, 1, 1)
    assert v.lhs == (Q(1),) and v.rhs == (Q(2),)


def test_violations_are_lexicographic():
    T = StructureTensor(2, {(1, 1): [(1, 1)], (2, 2): [(2, 1)]})
    triples = [v.triple for v in check_right_leibniz(T)]
    assert triples == sorted(triples) and triples


def test_derivation_examples():
    T = L2(4)
    assert is_derivation(T, right_mult(T, e(4, 1)))
    assert not is_derivation(T, LinearMap.identity(4))
    assert is_derivation(T, LinearMap.zero(4))


def test_lie_examples():
    assert not check_lie(L2(5))
    assert check_lie(StructureTensor.abelian(4))


def test_transform_identity_and_scaling():
    T = L2(5)
    assert transform_basis(T, LinearMap.identity(5)) == T
    G = build(AlgebraDescriptor("G1", 4, {"a": 3}))
    P = LinearMap.from_entries(5, {(i, i): 1 for i in range(1, 5)} | {(5, 5): Q(1, 3)})
    U = transform_basis(G, P)
    for i, j, k, c in G.triples():
        m = (i == 5) + (j == 5) - (k == 5)
        assert U.coeff(i, j, k) == c * Q(1, 3) ** m


def test_singular_basis_change_rejected():
    with pytest.raises(InvalidTransformError):
        transform_basis(L2(4), LinearMap.zero(4))


def test_index_out_of_range_rejected():
    with pytest.raises(UsageError):
        StructureTensor(2, {(1, 3): [(1, 1)]})


def test_duplicate_terms_are_merged():
    T = StructureTensor(2, {(1, 1): [(2, 1), (2, Q(-1))]})
    assert T.nnz == 0


@given(tensors(max_dim=3), st.data())
def test_transform_roundtrip(T, data):
    P = data.draw(invertible_maps(T.dim))
    assert transform_basis(transform_basis(T, P), P.inverse()) == T


@given(tensors(max_dim=3), st.data())
def test_transform_composition(T, data):
    P = data.draw(invertible_maps(T.dim))
    R = data.draw(invertible_maps(T.dim))
    assert transform_basis(transform_basis(T, P), R) == transform_basis(T, P @ R)


@given(tensors(max_dim=3), st.data())
def test_bracket_is_bilinear(T, data):
    n = T.dim
    x, y, z = (data.draw(vectors(n)) for _ in range(3))
    c = data.draw(rationals)
    xz = tuple(a + c * b for a, b in zip(x, z))
    lhs = bracket(T, xz, y)
    rhs = tuple(a + c * b for a, b in zip(bracket(T, x, y), bracket(T, z, y)))
    assert lhs == rhs


@given(tensors(max_dim=4))
def test_identity_check_agrees_with_operator_law(T):
    for side, check in (("right", check_right_leibniz), ("left", check_left_leibniz)):
        assert (check(T) == []) == (operator_law_defects(T, side) == [])


@given(tensors(max_dim=3), st.data())
def test_identity_status_invariant_under_basis_change(T, data):
    P = data.draw(invertible_maps(T.dim))
    U = transform_basis(T, P)
    assert (check_right_leibniz(T) == []) == (check_right_leibniz(U) == [])
    assert (check_left_leibniz(T) == []) == (check_left_leibniz(U) == [])
