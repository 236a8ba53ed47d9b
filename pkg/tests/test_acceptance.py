"""Acceptance suite: one test per criterion, full size, with the runtime budget enforced.

The PASS/FAIL lines are printed (with ``-s``) and repeated in the terminal summary.
"""
import pytest

from orbhall.selfcheck import SUITES


@pytest.mark.parametrize("suite", SUITES, ids=[f"{s.number:02d}-{s.title.replace(' ', '-')}" for s in SUITES])
def test_criterion(suite, acceptance_line):
    result = suite(quick=False)
    within = result.elapsed <= result.budget
    line = result.line()
    if result.passed and not within:
        line = line.replace("[PASS]", "[FAIL]") + " over budget"
    print("\n" + line)
    acceptance_line(line)
    assert result.passed, result.details
    assert within, f"{result.elapsed:.2f}s exceeds the {result.budget:g}s budget"
