"""Acceptance criteria, one test per check, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import pytest

from dispersive_lamb.verify import CHECKS, run_check


@pytest.mark.acceptance
@pytest.mark.parametrize("name, func, budget", CHECKS, ids=[c[0] for c in CHECKS])
def test_criterion(name, func, budget):
    result = run_check(name, func, budget)
    status = "PASS" if result.ok else "FAIL"
    print(f"\n{status} {name}: {result.detail} [{result.elapsed:.2f}s of {budget:g}s]")
    assert result.passed, result.detail
    assert result.elapsed < budget, f"took {result.elapsed:.1f}s, budget {budget:g}s"
