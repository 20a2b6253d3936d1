"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from hardy_closure.acceptance import run_criteria


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_criteria("quick")}


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(results, number, capsys):
    r = results[number]
    with capsys.disabled():
        print("\n" + r.line())
        for w in r.warnings:
            print(f"    warning: {w}")
    assert r.passed, r.details


def test_all_criteria_present(results):
    assert sorted(results) == list(range(1, 10))


if __name__ == "__main__":
    out = run_criteria(sys.argv[1] if len(sys.argv) > 1 else "quick")
    for r in out:
        print(r.line())
    sys.exit(0 if all(r.passed for r in out) else 1)
