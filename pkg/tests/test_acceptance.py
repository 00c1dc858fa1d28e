"""One test per acceptance criterion; each prints a single pass/fail line.

Runtime limits are part of the criteria and appear as their own cases.
"""

import pytest

from hyperdyn.acceptance import CRITERIA, run_criterion

RESULTS: dict[int, str] = {}


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion-{c.number:02d}-{c.name}" for c in CRITERIA])
def test_criterion(criterion):
    cases, elapsed = run_criterion(criterion, seed=0)
    bad = [c for c in cases if c.status != "pass"]
    verdict = "PASS" if not bad else "FAIL"
    line = f"criterion {criterion.number:2d}: {verdict}  {criterion.name} ({elapsed:.2f} s)"
    RESULTS[criterion.number] = line
    print(line)
    for c in cases:
        print(f"    {c.status:12s} {c.name}  measured={c.measured!r} bound={c.bound!r}")
    assert cases, "criterion produced no cases"
    assert not bad, "; ".join(f"{c.name}: {c.status} ({c.detail})" for c in bad)


def test_all_criteria_registered():
    assert [c.number for c in CRITERIA] == list(range(1, 16))
