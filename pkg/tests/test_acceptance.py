"""One pass/fail line per acceptance criterion, at full level."""

from __future__ import annotations

import pytest

from flatcover.verify import CRITERIA, DEFAULT_SEED, repo_root, run_check, run_golden


@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA])
def test_criterion(number, acceptance_report):
    res = run_check(number, "full", DEFAULT_SEED)
    acceptance_report(res.line())
    assert res.passed, res.line()


def test_readme_golden_outputs(acceptance_report):
    root = repo_root()
    assert root is not None, "golden/manifest.json not found"
    res = run_golden(root)
    acceptance_report(res.line())
    assert res.passed, res.line()
