from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from leibniz import LinearMap, StructureTensor, transform_basis
from leibniz import families as F
from leibniz import transforms as X
from leibniz.errors import InvalidTransformError, UsageError
from leibniz.families import AlgebraDescriptor, build, sample_params


def test_shift_step_matrix():
    s = X.absorption_step("shift", {"dim": 6, "shifts": {6: {1: -2}}})
    want = LinearMap.identity(6).rows
    want = [list(r) for r in want]
    want[0][5] = Q(-2)
    assert [list(r) for r in s.map.rows] == want
    assert s.description == "e'_6 = e_6 + -2 e_1"


def test_zero_shift_is_identity():
    s = X.absorption_step("shift", {"dim": 5, "shifts": {5: {1: 0}}})
    assert s.map == LinearMap.identity(5)


def test_scale_step_matrix():
    s = X.absorption_step("scale", {"dim": 6, "factors": {6: Q(1, 3)}})
    assert s.map.rows[5][5] == Q(1, 3)
    assert s.map == LinearMap.from_entries(6, {(i, i): 1 for i in range(1, 6)} | {(6, 6): Q(1, 3)})


@pytest.mark.parametrize("kind, coeffs", [
    ("shift", {"dim": 3, "shifts": {4: {1: 1}}}),
    ("shift", {"dim": 3, "shifts": {2: {2: 1}}}),
    ("scale", {"dim": 3, "factors": {1: 0}}),
    ("twist", {"dim": 3}),
    ("shift", {}),
])
def test_bad_steps_rejected(kind, coeffs):
    with pytest.raises(InvalidTransformError):
        X.absorption_step(kind, coeffs)


def test_singular_step_rejected():
    with pytest.raises(InvalidTransformError):
        X.TransformStep("collapse", LinearMap.zero(2))


def test_composition_order():
    T = build(sample_params("RThm1Case1", 5, 0))
    s1 = X.absorption_step("shift", {"dim": 6, "shifts": {6: {1: 2}}})
    s2 = X.absorption_step("scale", {"dim": 6, "factors": {1: 3}})
    stepwise = transform_basis(transform_basis(T, s1.map), s2.map)
    assert X.compose_steps([s1, s2]) == s1.map @ s2.map
    assert transform_basis(T, X.compose_steps([s1, s2])) == stepwise
    assert transform_basis(T, s2.map @ s1.map) != stepwise


def test_compose_needs_steps():
    with pytest.raises(UsageError):
        X.compose_steps([])


def test_pattern_of_tensor_matches_itself():
    T = build(sample_params("G3", 6, 1))
    P = X.ShapePattern.of_tensor(T)
    assert P.matches(T)
    assert X.verify_chain(AlgebraDescriptor("G3", 6, sample_params("G3", 6, 1).params), [], P)


def test_pattern_reports_mismatch():
    T = build(AlgebraDescriptor("L2", 5))
    P = X.ShapePattern.of_tensor(T)
    U = StructureTensor(5, {(1, 1): [(2, 2)]} | {k: list(v) for k, v in T.brackets.items() if k != (1, 1)})
    assert P.mismatches(U) == [((1, 1, 2), Q(1), Q(2))]


def test_family_pattern_loose_and_fixed():
    P = X.family_pattern("G1", 4, {}, ["a"])
    assert (5, 4, 2) in P.fixed_set and (5, 4, 4) not in P.fixed_set and (5, 4, 4) not in P.zero_set
    with pytest.raises(UsageError):
        X.family_pattern("G1", 4, {}, [])


def test_iso_examples():
    L = build(AlgebraDescriptor("L2", 5))
    assert X.iso_witness_check(L, L, LinearMap.identity(5))
    G = build(AlgebraDescriptor("G2", 5, {"delta": 1}))
    assert X.iso_witness_check(G, G, LinearMap.identity(6))
    L4 = build(AlgebraDescriptor("L2", 4))
    A = StructureTensor.abelian(4)
    M = LinearMap.from_entries(4, {(1, 1): 1, (2, 2): 2, (3, 3): 1, (4, 4): 1, (1, 4): 1})
    assert not X.iso_witness_check(L4, A, M)


@pytest.mark.parametrize("side", ["right", "left"])
@pytest.mark.parametrize("case", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [5, 6, 7])
def test_absorption_chains(side, case, n):
    pre = "RThm1" if side == "right" else "LThm1"
    for seed in range(4):
        ch = X.absorption_chain(side, case, sample_params(f"{pre}Case{case}", n, seed))
        rep = X.replay_chain(ch.start, ch.steps, ch.target)
        assert rep.ok, (seed, rep.mismatches[:3])


def test_right_case1_first_step():
    d = sample_params("RThm1Case1", 5, 0)
    ch = X.absorption_chain("right", 1, d)
    A43 = F.derived_values("RThm1Case1", 5, d.params)["A_{4,3}"]
    assert ch.steps[0].map == LinearMap.from_entries(6, {(i, i): 1 for i in range(1, 7)} | {(1, 6): -A43})


def test_absorption_without_the_first_shift_does_not_match():
    seed = next(s for s in range(50)
                if F.derived_values("RThm1Case1", 6, sample_params("RThm1Case1", 6, s).params)["A_{4,3}"])
    d = sample_params("RThm1Case1", 6, seed)
    ch = X.absorption_chain("right", 1, d)
    assert X.replay_chain(d, ch.steps, ch.target).ok
    assert not X.replay_chain(d, ch.steps[1:], ch.target).ok


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_case3_normalization(n):
    signs = set()
    for seed in range(12):
        start = X.sample_square_ratio_start(n, seed)
        ch = X.normalization_chain_case3(start)
        assert X.verify_chain(ch.start, ch.steps, ch.target)
        r = start.params["a_{5,3}"] / start.params["b"]
        signs.add((r > 0) - (r < 0))
        eps = Q((r > 0) - (r < 0))
        assert ch.target == X.family_pattern("G4", n, {"epsilon": eps}, [F.bk(m) for m in range(1, n - 4)])
    assert len(signs) >= 2


def test_case3_irrational_ratio_refused():
    d = sample_params("RThm2Case3", 5, 0)
    p = dict(d.params)
    p["a_{5,3}"] = 2 * p["b"]
    with pytest.raises(UsageError, match="irrational"):
        X.normalization_chain_case3(AlgebraDescriptor("RThm2Case3", 5, p))


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_case1_normalization_ascending(n):
    done = 0
    for seed in range(6):
        d = sample_params("RThm2Case1", n, seed)
        if d.params["b"] == 0:
            continue
        ch = X.normalization_chain_case1(d)
        assert X.verify_chain(ch.start, ch.steps, ch.target), seed
        done += 1
    assert done


@pytest.mark.parametrize("n", [7, 8])
def test_case1_descending_cascade_leaves_band(n):
    # later offsets rename the shorter ones, so going long-to-short leaves residue
    failures = 0
    for seed in range(6):
        d = sample_params("RThm2Case1", n, seed)
        if d.params["b"] == 0:
            continue
        ch = X.normalization_chain_case1(d, order="descending")
        failures += not X.verify_chain(ch.start, ch.steps, ch.target)
    assert failures


def test_case1_needs_nonzero_b():
    d = sample_params("RThm2Case1", 5, 0)
    p = dict(d.params) | {"b": 0}
    with pytest.raises(UsageError):
        X.normalization_chain_case1(AlgebraDescriptor("RThm2Case1", 5, p))


def test_chain_start_family_checked():
    with pytest.raises(UsageError):
        X.absorption_chain("right", 1, sample_params("RThm1Case2", 5, 0))
    with pytest.raises(UsageError):
        X.absorption_chain("up", 1, sample_params("RThm1Case1", 5, 0))


@given(st.integers(5, 7), st.integers(0, 10**6), st.sampled_from([1, 2, 3, 4]))
def test_chain_steps_keep_nilradical(n, seed, case):
    ch = X.absorption_chain("right", case, sample_params(f"RThm1Case{case}", n, seed))
    rep = X.replay_chain(ch.start, ch.steps, ch.target)
    assert all(s.nilradical_intact and s.identity_holds for s in rep.steps)
    assert rep.ok


@given(st.integers(5, 7), st.integers(0, 10**6))
def test_composed_chain_equals_stepwise(n, seed):
    ch = X.absorption_chain("left", 1, sample_params("LThm1Case1", n, seed))
    rep = X.replay_chain(ch.start, ch.steps, ch.target)
    assert transform_basis(build(ch.start), X.compose_steps(ch.steps)) == rep.final
