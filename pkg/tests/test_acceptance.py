"""Each acceptance criterion at its stated time limit; one PASS/FAIL line per criterion."""

import pytest

from fraisselab.suite import CRITERIA, run_criterion

SEED = 7


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[c[1] for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number, SEED)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
