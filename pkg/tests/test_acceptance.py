"""Acceptance criteria: exact values, pinned prefixes, and wall-clock budgets.

Run with ``pytest tests/test_acceptance.py -v`` or directly as
``python3 tests/test_acceptance.py``; either way one PASS/FAIL line is printed
per criterion.
"""

import sys

import pytest

from addcomp.verify import CHECKS, run_check

CRITERIA = list(enumerate(CHECKS, 1))


def _line(number, result):
    status = "PASS" if result.passed else "FAIL"
    detail = f"{result.seconds:.2f}s of {result.budget:g}s"
    if result.error:
        detail += f"; {result.error}"
    bad = [i.label for i in result.items if not i.ok]
    if bad:
        detail += "; failing: " + ", ".join(bad)
    return f"{status} {number:2d} {result.name} ({detail})"


@pytest.mark.parametrize("number,name", CRITERIA, ids=[name for _, name in CRITERIA])
def test_criterion(number, name, capsys):
    result = run_check(name)
    with capsys.disabled():
        print("\n" + _line(number, result))
    for item in result.items:
        assert item.ok, f"{item.label}: expected {item.expected!r}, got {item.actual!r}"
    assert result.error is None, result.error
    assert result.seconds <= result.budget, f"took {result.seconds:.2f}s, budget {result.budget}s"


if __name__ == "__main__":
    results = [(n, run_check(name)) for n, name in CRITERIA]
    for n, r in results:
        print(_line(n, r))
    sys.exit(0 if all(r.passed for _, r in results) else 1)
