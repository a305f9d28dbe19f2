from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from leibniz.core import LinearMap, StructureTensor

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example]
)
settings.load_profile("default")


rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def tensors(draw, min_dim=1, max_dim=4, max_terms=10):
    n = draw(st.integers(min_dim, max_dim))
    idx = st.integers(1, n)
    terms = draw(st.lists(st.tuples(idx, idx, idx, rationals), max_size=max_terms))
    table = {}
    for i, j, k, c in terms:
        table.setdefault((i, j), []).append((k, c))
    return StructureTensor(n, table)


@st.composite
def vectors(draw, n):
    return tuple(draw(st.lists(rationals, min_size=n, max_size=n)))


@st.composite
def invertible_maps(draw, n):
    while True:
        rows = draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n))
        M = LinearMap(rows)
        if M.is_invertible():
            return M


@pytest.fixture
def q():
    return Fraction


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
