"""Acceptance criteria 1-10, one test and one printed line per criterion.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest,
where the lines are repeated in the terminal summary.
"""

from __future__ import annotations

import sys

import pytest

from lambdastar.acceptance import run_all

LINES: list[str] = []


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_all()}


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(results, number):
    r = results[number]
    line = r.line()
    LINES.append(line)
    print(line)
    assert r.passed, line


if __name__ == "__main__":
    rs = run_all()
    for r in rs:
        print(r.line())
    sys.exit(0 if all(r.passed for r in rs) else 1)
