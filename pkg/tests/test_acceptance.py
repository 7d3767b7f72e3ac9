"""The ten acceptance criteria at their stated tolerances and time budgets.

Each test prints its criterion line; the full list is repeated in the
terminal summary (see conftest.py).
"""

import pytest

from cocovex.acceptance import CRITERIA, run_criterion

SEED = 0
RESULTS = {}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    res = run_criterion(number, SEED)
    RESULTS[number] = res
    print(res.line())
    assert res.ok, res.line()


def test_parallel_suite_matches_sequential():
    from cocovex.acceptance import run_suite

    seq = run_suite(SEED, only=[1, 2, 10])
    par = run_suite(SEED, only=[1, 2, 10], jobs=2)
    assert [(r.number, r.status, r.detail) for r in seq] == [(r.number, r.status, r.detail) for r in par]
