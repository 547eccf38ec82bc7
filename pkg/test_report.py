import json
import math

from core.report import Check
from core.report import Report
from core.report import generate_html_report
from core.report import generate_markdown_report


def test_check_tracks_worst_values():
    chk = Check("theta", "oddness")
    assert chk.record(1e-12, 10.0, 1e-9)
    assert not chk.record(1e-6, 0.5, 1e-9)
    assert chk.samples == 2 and not chk.passed
    assert chk.worst_abs == 1e-6 and chk.worst_rel == 1e-6
    assert not Check("x", "y").record(math.nan, 1.0, 1.0)


def test_expect_keeps_the_first_detail():
    chk = Check("klr", "braid")
    chk.expect(True)
    chk.expect(False, "first")
    chk.expect(False, "second")
    assert chk.detail == "first" and chk.samples == 3


def test_report_json_is_canonical():
    report = Report("demo", 7, 0.3 + 1.1j)
    report.check("b", "z").record(0.0, 1.0, 1e-9)
    report.check("a", "y").record(math.inf, 1.0, 1e-9)
    report.metadata["value"] = 1 + 2j
    data = json.loads(report.to_json())
    assert [c["name"] for c in data["checks"]] == ["a", "b"]
    assert data["checks"][0]["worst_abs"] == "inf"
    assert data["metadata"]["value"] == [1.0, 2.0]
    assert data["pass"] is False
    assert report.summary().startswith("[FAIL] demo: 1/2 checks passed")


def test_renderings():
    report = Report("demo", 7, 1j)
    report.check("a", "y").record(0.0, 1.0, 1e-9)
    md = generate_markdown_report(report)
    assert "| a | y | 1 |" in md and "**Status:** PASS" in md
    assert "<td>a</td>" in generate_html_report(report)
