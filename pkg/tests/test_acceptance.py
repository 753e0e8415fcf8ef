"""Acceptance gate: one pass/fail line per criterion, at the stated tolerances."""

import pytest

from mpade.acceptance import CRITERIA

LINES = []


@pytest.mark.parametrize("cid", list(CRITERIA))
def test_criterion(cid):
    res = CRITERIA[cid]()
    LINES.append(res.line())
    print(res.line())
    assert res.passed, res.summary
