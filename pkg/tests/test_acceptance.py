"""One test per acceptance criterion; the summary lines are printed at the end of the run."""

import pytest

from hallshuffle.acceptance import CRITERIA, run_criterion

RESULTS = {}


@pytest.mark.parametrize("number", [k for k, _, _ in CRITERIA],
                         ids=[f"criterion_{k:02d}" for k, _, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    RESULTS[number] = result
    print(result.line())
    assert result.passed, result.detail
