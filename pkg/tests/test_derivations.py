from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from leibniz import (
    LinearMap,
    StructureTensor,
    basis_vector,
    derivation_space,
    inner_derivations,
    is_derivation,
    is_nilpotent_map,
    left_mult,
    nil_independent_pair,
    right_mult,
    trace_pencil,
)
from leibniz.errors import PreconditionError
from leibniz.families import AlgebraDescriptor, build, outer_pair_param_names, right_outer_pair
from leibniz.oracles import dense_derivation_dim

from conftest import rationals, tensors


def L2(n):
    return build(AlgebraDescriptor("L2", n))


def E(n, i, j):
    return LinearMap.from_entries(n, {(i, j): 1})


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_l2_inner_derivations_listed(n):
    T = L2(n)
    D = derivation_space(T)
    assert D.contains(right_mult(T, basis_vector(n, 1)))
    assert right_mult(T, basis_vector(n, 3)) == E(n, 2, 1) - E(n, 4, 1)
    assert D.contains(E(n, 2, 1) - E(n, 4, 1))
    for i in range(4, n):
        assert right_mult(T, basis_vector(n, i)) == E(n, i + 1, 1).scale(-1)


@pytest.mark.parametrize("n, dim", [(4, 6), (5, 8), (6, 10)])
def test_l2_derivation_dimension_frozen(n, dim):
    # values fixed by the dense sympy nullspace oracle
    assert derivation_space(L2(n)).dim == dim


def test_abelian_derivations_are_everything():
    assert derivation_space(StructureTensor.abelian(3)).dim == 9


def test_l2_inner_dimensions():
    for n in (4, 5, 6, 7):
        T = L2(n)
        assert inner_derivations(T, "right").dim == n - 2
        left = inner_derivations(T, "left")
        assert left.contains(E(n, 4, 1))
        for i in range(4, n):
            assert left.contains(left_mult(T, basis_vector(n, i)))
            assert left_mult(T, basis_vector(n, i)) == E(n, i + 1, 1)


def test_abelian_inner_is_zero():
    assert inner_derivations(StructureTensor.abelian(3), "right").dim == 0


def test_inner_needs_identity():
    G = build(AlgebraDescriptor("G1", 4, {"a": 2}))
    with pytest.raises(PreconditionError):
        inner_derivations(G, "left")


def test_nilpotent_maps():
    assert is_nilpotent_map(right_mult(L2(5), basis_vector(5, 1)))
    assert not is_nilpotent_map(LinearMap.identity(4))
    G = build(AlgebraDescriptor("G1", 5, {"a": 1}))
    R = right_mult(G, basis_vector(6, 6)).restrict(5)
    assert not is_nilpotent_map(R)


def test_nil_independence_examples():
    A, B = right_outer_pair(5, {name: 0 for name in outer_pair_param_names(5, "right")})
    assert nil_independent_pair(A, B)
    U = LinearMap.from_entries(3, {(1, 2): 1, (2, 3): 1})
    assert not nil_independent_pair(U, U)
    assert nil_independent_pair(E(2, 1, 1), E(2, 2, 2))


def test_trace_pencil_is_homogeneous():
    P = trace_pencil(E(2, 1, 1), E(2, 2, 2))
    assert P.coefficients[0] == (Q(1), Q(1))
    assert P.coefficients[1] == (Q(1), Q(0), Q(1))


def test_pencil_with_rational_nilpotent_direction():
    # A - B is nilpotent, so the pair is dependent
    A = LinearMap.from_entries(2, {(1, 1): 1, (1, 2): 1})
    B = LinearMap.from_entries(2, {(1, 1): 1})
    assert not nil_independent_pair(A, B)


def test_pencil_with_irrational_nilpotent_direction():
    # traces of (tA + B)^k vanish at t = +-sqrt(2) simultaneously
    A = LinearMap.from_entries(2, {(1, 1): 1, (2, 2): -1})
    B = LinearMap.from_entries(2, {(1, 2): -2, (2, 1): 1})
    assert not nil_independent_pair(A, B)


@pytest.mark.parametrize("n", [4, 5])
def test_derivation_space_matches_oracle_on_families(n):
    for fam, params in (("L2", {}), ("G1", {"a": Q(3, 2)}), ("Gc2", {}), ("Lc2", {})):
        T = build(AlgebraDescriptor(fam, n, params))
        assert derivation_space(T).dim == dense_derivation_dim(T)


@given(tensors(max_dim=3, max_terms=6))
def test_derivation_space_matches_oracle(T):
    assert derivation_space(T).dim == dense_derivation_dim(T)


@given(tensors(max_dim=3, max_terms=6))
def test_basis_members_are_derivations(T):
    for D in derivation_space(T).basis:
        assert is_derivation(T, D)


@given(tensors(max_dim=3, max_terms=6), st.data())
def test_commutator_of_derivations_is_derivation(T, data):
    basis = derivation_space(T).basis
    if len(basis) < 2:
        return
    i = data.draw(st.integers(0, len(basis) - 1))
    j = data.draw(st.integers(0, len(basis) - 1))
    A, B = basis[i], basis[j]
    assert is_derivation(T, A @ B - B @ A)


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3), rationals)
def test_nil_independence_scale_invariant(rows, c):
    A = LinearMap(rows)
    B = LinearMap.identity(3)
    if c:
        assert nil_independent_pair(A, B) == nil_independent_pair(A.scale(c), B)
