"""Acceptance criteria 1-10, one pass/fail line each.

Run directly (python tests/test_acceptance.py) or through pytest, where the
lines are printed in the terminal summary.
"""

import pytest

from leibniz.suite import CRITERIA, SuiteConfig

FULL = SuiteConfig(n_min=4, n_max=8, samples_per_family=20, seed=0)
CONFIGS = {1: SuiteConfig(n_min=4, n_max=10, samples_per_family=20, seed=0)}

LINES = {}


def run_criterion(k):
    res = CRITERIA[k](CONFIGS.get(k, FULL))
    extra = "".join(f"\n    note: {n}" for n in res.notes)
    extra += "".join(f"\n    FAILED {f}" for f in res.failures[:10])
    LINES[k] = res.line() + extra
    return res


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    res = run_criterion(k)
    print(LINES[k])
    assert res.checks > 0, f"criterion {k} ran no checks"
    assert res.passed, "\n".join(res.failures[:20])


if __name__ == "__main__":
    import sys

    ok = True
    for k in sorted(CRITERIA):
        ok &= run_criterion(k).passed
        print(LINES[k], flush=True)
    sys.exit(0 if ok else 1)
