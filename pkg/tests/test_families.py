from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, strategies as st

from leibniz import (
    basis_vector,
    bracket,
    center,
    check_leibniz,
    derived_series,
    lower_central_series,
    operator_law_defects,
)
from leibniz import families as F
from leibniz.errors import DescriptorError
from leibniz.families import AlgebraDescriptor, build, expected_invariants, sample_params

ALL = tuple(F.FAMILIES)


def e(n, i):
    return basis_vector(n, i)


def vec(n, terms):
    v = [Q(0)] * n
    for k, c in terms.items():
        v[k - 1] = Q(c)
    return tuple(v)


def test_g1_brackets():
    T = build(AlgebraDescriptor("G1", 4, {"a": 2}))
    assert bracket(T, e(5, 1), e(5, 5)) == vec(5, {1: 1})
    assert bracket(T, e(5, 5), e(5, 4)) == vec(5, {2: 1, 4: -2})


def test_gc2_bracket():
    T = build(AlgebraDescriptor("Gc2", 4))
    assert bracket(T, e(6, 6), e(6, 4)) == vec(6, {2: 1, 4: -1})


def test_ll4_bracket():
    T = build(AlgebraDescriptor("Ll4", 5, {"epsilon": 0}))
    assert bracket(T, e(6, 4), e(6, 6)) == vec(6, {2: -1, 4: 1})


def test_l2_has_five_brackets_and_six_constants():
    T = build(AlgebraDescriptor("L2", 5))
    assert len(T.brackets) == 5 and T.nnz == 6


def test_sample_case1_respects_constraints():
    d = sample_params("RThm1Case1", 5, 1)
    a, b = d.params["a"], d.params["b"]
    assert a != 0 and b not in (2 * a, -a)


def test_g2_needs_n_five():
    with pytest.raises(DescriptorError, match="G2 requires n ≥ 5"):
        sample_params("G2", 4, 0)
    with pytest.raises(DescriptorError, match="G2 requires n ≥ 5"):
        build(AlgebraDescriptor("G2", 4, {"delta": 1}))


def test_g4_sample_parameters():
    d = sample_params("G4", 7, 3)
    assert set(d.params) == {"epsilon", "b_1", "b_2"}
    assert d.params["epsilon"] in (0, 1, -1)


@pytest.mark.parametrize("desc, needle", [
    (AlgebraDescriptor("RThm1Case1", 5, {}), "missing"),
    (AlgebraDescriptor("G1", 5, {"a": 1, "zeta": 2}), "unknown parameter"),
    (AlgebraDescriptor("G2", 5, {"delta": 2}), "delta must be 1 or -1"),
    (AlgebraDescriptor("G4", 5, {"epsilon": 2}), "epsilon must be 0, 1 or -1"),
    (AlgebraDescriptor("G4", 4, {"epsilon": 1}), "epsilon must be 0 when n = 4"),
    (AlgebraDescriptor("Nope", 5, {}), "unknown family"),
])
def test_descriptor_errors(desc, needle):
    with pytest.raises(DescriptorError, match=needle):
        F.validate(desc)


def test_case1_constraints_named():
    base = dict(sample_params("RThm1Case1", 5, 0).params)
    for a, b, msg in ((0, 1, "a != 0"), (1, 2, "b != 2a"), (1, -1, r"b != \(4-n\)a")):
        with pytest.raises(DescriptorError, match=msg):
            F.validate(AlgebraDescriptor("RThm1Case1", 5, base | {"a": a, "b": b}))


def test_g1_allows_a_zero():
    T = build(AlgebraDescriptor("G1", 4, {"a": 0}))
    assert not check_leibniz(T, "right")


def test_expected_invariants_examples():
    assert expected_invariants(AlgebraDescriptor("L2", 6)) | {} == {
        "ds_dims": [6, 4, 0], "ls_dims": [6, 4, 2, 1, 0], "ls_stabilized": False,
        "center_dim": 2, "leibniz_side": "both", "published": True,
    }
    g4 = expected_invariants(AlgebraDescriptor("G4", 6, {"epsilon": 1, "b_1": 0}))
    assert (g4["ds_dims"], g4["ls_dims"], g4["ls_stabilized"], g4["leibniz_side"]) == (
        [7, 5, 0], [7, 5, 5], True, "right-only")
    lc = expected_invariants(AlgebraDescriptor("Lc2", 5))
    assert (lc["ds_dims"], lc["ls_dims"], lc["leibniz_side"]) == ([7, 5, 3, 0], [7, 5, 5], "left-only")


def test_descriptor_json_roundtrip():
    d = sample_params("LThm1Case2", 6, 4)
    assert AlgebraDescriptor.from_json(d.to_json()) == d
    assert hash(AlgebraDescriptor.from_json(d.to_json())) == hash(d)


def test_sampling_is_deterministic():
    assert sample_params("RThm2Case4", 7, 9) == sample_params("RThm2Case4", 7, 9)


def _families_at(n):
    return [t for t in ALL if F.FAMILIES[t].min_n <= n]


@pytest.mark.parametrize("n", range(4, 9))
def test_every_family_satisfies_its_identity(n):
    for tag in _families_at(n):
        fam = F.FAMILIES[tag]
        sides = ("right", "left") if fam.side == "both" else (fam.side,)
        for seed in range(3):
            T = build(sample_params(tag, n, seed))
            for side in sides:
                assert not check_leibniz(T, side), (tag, n, seed, side)
                assert not operator_law_defects(T, side), (tag, n, seed, side)


@pytest.mark.parametrize("tag", F.CANONICAL_RIGHT + F.CANONICAL_LEFT)
def test_canonical_families_fail_the_other_side(tag):
    fam = F.FAMILIES[tag]
    other = "left" if fam.side == "right" else "right"
    for n in range(max(fam.min_n, 4), 8):
        for seed in range(3):
            assert check_leibniz(build(sample_params(tag, n, seed)), other)


@pytest.mark.parametrize("tag", ALL)
def test_strict_transcription_equals_patched_when_ledger_empty(tag):
    d = sample_params(tag, 6, 0)
    assert build(d, strict=True) == build(d)
    assert F.patches_exercised(tag) == []


@pytest.mark.parametrize("tag", ["G4", "Ll4"])
def test_epsilon_has_no_slot_at_n_four(tag):
    dim, rows = F.raw_table(tag, 4, {"epsilon": Q(1)})
    assert (dim, rows) == F.raw_table(tag, 4, {"epsilon": Q(0)})


@pytest.mark.parametrize("tag", ["G1", "L1"])
@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_one_parameter_families_at_a_equals_one(tag, n):
    d = AlgebraDescriptor(tag, n, {"a": 1})
    exp = expected_invariants(d)
    T = build(d)
    assert not exp["published"]
    assert list(derived_series(T).dims) == exp["ds_dims"]
    ls = lower_central_series(T)
    assert list(ls.dims) == exp["ls_dims"] and ls.stabilized


@pytest.mark.parametrize("tag", F.CANONICAL_RIGHT + F.CANONICAL_LEFT + ("L2",))
@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_published_series_lines(tag, n):
    if F.FAMILIES[tag].min_n > n:
        return
    for seed in range(3):
        d = sample_params(tag, n, seed)
        exp = expected_invariants(d)
        T = build(d)
        assert list(derived_series(T).dims) == exp["ds_dims"], d
        ls = lower_central_series(T)
        assert list(ls.dims) == exp["ls_dims"] and ls.stabilized == exp["ls_stabilized"], d
        if exp["center_dim"] is not None:
            assert center(T).dim == exp["center_dim"]


# single-unknown re-solve: make one derived coefficient symbolic and ask the
# identity which value it must take


def _symbolic_defects(dim, rows, side):
    c = {}
    for (i, j), row in rows.items():
        for k, v in row.items():
            c[(i, j, k)] = sympy.sympify(v)

    def br(x, y):
        out = [sympy.Integer(0)] * dim
        for (i, j, k), v in c.items():
            if x[i - 1] != 0 and y[j - 1] != 0:
                out[k - 1] += x[i - 1] * y[j - 1] * v
        return out

    eye = [[sympy.Integer(int(a == b)) for a in range(dim)] for b in range(dim)]
    eqs = set()
    for x in eye:
        for y in eye:
            for z in eye:
                if side == "right":
                    lhs = br(br(x, y), z)
                    rhs = [p + q for p, q in zip(br(br(x, z), y), br(x, br(y, z)))]
                else:
                    lhs = br(br(x, y), z)
                    rhs = [p - q for p, q in zip(br(x, br(y, z)), br(y, br(x, z)))]
                for a, b in zip(lhs, rhs):
                    d = sympy.expand(a - b)
                    if d != 0:
                        eqs.add(d)
    return eqs


@pytest.mark.parametrize("tag, name, n", [
    ("RThm1Case1", "A_{4,3}", 5), ("RThm1Case1", "B_{2,3}", 5),
    ("RThm1Case2", "A_{4,3}", 6), ("RThm1Case4", "A_{4,3}", 5),
    ("LThm1Case1", "A_{4,1}", 5), ("LThm1Case1", "A_{4,3}", 5),
    ("LThm1Case2", "A_{4,3}", 6), ("LThm1Case3", "A_{4,1}", 5),
])
def test_derived_coefficient_is_forced_by_the_identity(monkeypatch, tag, name, n):
    d = sample_params(tag, n, 7)
    true = F.derived_values(tag, n, d.params)[name]
    X = sympy.Symbol("X")
    real = F.derived_values

    def with_unknown(family, n_, p):
        out = real(family, n_, p)
        out[name] = X
        return out

    monkeypatch.setattr(F, "derived_values", with_unknown)
    dim, rows = F.raw_table(tag, n, d.params)
    eqs = _symbolic_defects(dim, rows, F.FAMILIES[tag].side)
    assert eqs
    sol = sympy.solve(list(eqs), X, dict=True)
    assert sol == [{X: sympy.Rational(true.numerator, true.denominator)}]


def test_case1_derived_formula_by_hand():
    p = dict(sample_params("RThm1Case1", 5, 2).params)
    a, b = p["a"], p["b"]
    want = -(b / a) * p["a_{2,3}"] + ((a - b) * p["b_{2,1}"] + a * (p["a_{2,1}"] + p["a_{4,1}"])) / (2 * a - b)
    assert F.derived_values("RThm1Case1", 5, p)["A_{4,3}"] == want


@given(st.sampled_from(F.GENERAL_RIGHT + F.GENERAL_LEFT), st.integers(5, 8), st.integers(0, 10**6))
def test_general_families_hold_at_random_samples(tag, n, seed):
    fam = F.FAMILIES[tag]
    T = build(sample_params(tag, n, seed))
    assert not check_leibniz(T, fam.side)
