"""One line per acceptance criterion, at the tolerances and time budgets it states.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import pytest

from deltachain.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.line()
