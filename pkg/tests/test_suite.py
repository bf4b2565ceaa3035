from __future__ import annotations

from pathlib import Path

import pytest

from cayley.suite import Check, checks, run_suite


@pytest.mark.parametrize("check", checks(), ids=lambda c: c.name)
def test_check_passes(check):
    assert check.run() is None


def test_check_names_are_unique():
    names = [c.name for c in checks()]
    assert len(names) == len(set(names))


def test_anchors_are_verbatim_quotes():
    text = (Path(__file__).resolve().parents[1] / "spec.md").read_text(encoding="utf-8")
    loose = [c.name for c in checks() if c.anchor not in text]
    assert loose == []


def test_run_suite_filter_and_timings():
    report = run_suite("clifford", timings=True)
    assert [r.name for r in report.checks] == ["clifford-8,0", "clifford-4,4"]
    assert all(r.ms is not None for r in report.checks)
    assert report.ok


def test_run_suite_catches_exceptions():
    def boom():
        raise ZeroDivisionError("division by zero")

    report = run_suite(registry=[Check("boom", "1/0", boom)])
    assert not report.ok
    assert report.checks[0].witness == "ZeroDivisionError: division by zero"
    assert report.checks[0].ms is None
    assert (report.summary.total, report.summary.failed) == (1, 1)
