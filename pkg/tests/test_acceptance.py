"""Acceptance suite: every criterion at its stated tolerance and time limit.

Each test prints one PASS/FAIL line; the lines are collected and repeated in
the pytest terminal summary.  Run this file directly for just the lines.
"""
import json

import pytest

from alab import checks

LINES: list[str] = []


def _line(res) -> str:
    status = "PASS" if res.passed and res.seconds < res.limit else "FAIL"
    extra = "" if res.witness is None else "  witness=" + json.dumps(res.witness, default=str)[:200]
    return f"{status}  {res.name:<12} {res.seconds:7.2f}s (limit {res.limit:g}s){extra}"


@pytest.mark.parametrize("name", checks.ACCEPTANCE)
def test_criterion(name):
    res = checks.run_check(name, seed=0)
    line = _line(res)
    LINES.append(line)
    print(line)
    assert res.passed, f"{name} failed: {res.witness}"
    assert res.seconds < res.limit, f"{name} took {res.seconds:.2f}s, limit {res.limit}s"


if __name__ == "__main__":
    for n in checks.ACCEPTANCE:
        print(_line(checks.run_check(n, seed=0)))
