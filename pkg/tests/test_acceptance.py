"""Acceptance suite: one test per criterion, driving mhpref.certify.

Each test prints the criterion's sub-check lines (visible with -s or on
failure) and asserts the criterion passed.  The whole suite must finish
well inside the five-minute budget; the timing test asserts that.
"""

import time

import pytest

from mhpref import certify

_RESULTS = {}
_T0 = time.perf_counter()


def _run(number):
    if number not in _RESULTS:
        _RESULTS[number] = certify.run_criterion(number)
    res = _RESULTS[number]
    print()
    print(f"criterion {res.number}: {res.title} ({res.elapsed:.1f}s)")
    for line in res.lines:
        print("   ", line)
    return res


@pytest.mark.parametrize("number", range(1, 9), ids=[
    "c1_example_family_shifts",
    "c2_axiomatisation_directions",
    "c3_identification",
    "c4_reduction_round_trip",
    "c5_confidence_equivalence",
    "c6_optimism_equivalence",
    "c7_conjugate_duality",
    "c8_lp_solver_suite",
])
def test_criterion(number):
    res = _run(number)
    assert res.passed, "\n".join(res.lines)


def test_total_runtime_within_budget():
    for number in range(1, 9):
        _run(number)
    elapsed = time.perf_counter() - _T0
    print(f"\nacceptance suite wall time: {elapsed:.1f}s")
    assert elapsed < 300.0
