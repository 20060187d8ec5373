"""Acceptance criteria 1-10; prints one PASS/FAIL line per criterion.

The lines are printed live with ``-s`` and always repeated in the
terminal summary (see conftest.py).
"""

import pytest

from annular_khovanov import acceptance

# filled as criteria run; conftest prints it in the terminal summary
LINES: list[str] = []

CRITERIA = [
    acceptance.criterion_1,
    acceptance.criterion_2,
    acceptance.criterion_3,
    acceptance.criterion_4,
    acceptance.criterion_5,
    acceptance.criterion_6,
    acceptance.criterion_7,
    acceptance.criterion_8,
    acceptance.criterion_9,
    acceptance.criterion_10,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(criterion):
    result = criterion()
    LINES.append(result.line())
    print("\n" + result.line())
    if result.soft and not result.passed:
        pytest.xfail(f"soft performance bound missed: {result.detail}")
    assert result.passed, result.line()
