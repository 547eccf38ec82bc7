import json

import pytest

from pytest import mark

from app import EXIT_FAIL
from app import EXIT_PASS
from app import EXIT_USAGE
from app import main


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("ELLHECKE_SEED", raising=False)
    monkeypatch.delenv("ELLHECKE_SAMPLES", raising=False)


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_list(capsys):
    code, out = run(capsys, "--list")
    assert code == EXIT_PASS
    assert "Theta functions:" in out and "klr-verify" in out


def test_no_command(capsys):
    assert run(capsys)[0] == EXIT_USAGE


def test_theta_check_passes_and_is_reproducible(capsys, tmp_path):
    target = tmp_path / "theta.json"
    code, out = run(capsys, "--samples", "3", "--json", str(target), "theta-check")
    assert code == EXIT_PASS
    report = json.loads(out)
    assert report["suite"] == "theta-check" and report["pass"] is True
    assert report["metadata"]["config"]["samples"] == 3
    assert target.read_text(encoding="utf-8") == out
    assert run(capsys, "--samples", "3", "theta-check")[1] == out


def test_tamper_fails(capsys):
    code, out = run(capsys, "--samples", "3", "theta-check", "--tamper")
    assert code == EXIT_FAIL
    failing = [c for c in json.loads(out)["checks"] if not c["pass"]]
    assert failing


def test_reports_are_written(capsys, tmp_path):
    md, html = tmp_path / "r.md", tmp_path / "r.html"
    code, _ = run(capsys, "--samples", "2", "--markdown", str(md), "--html", str(html), "theta-check")
    assert code == EXIT_PASS
    assert md.read_text(encoding="utf-8").startswith("# Verification report: theta")
    assert "<table>" in html.read_text(encoding="utf-8")


def test_bad_config_is_a_usage_error(capsys, write_json):
    assert run(capsys, "--config", write_json("bad.json", {"trunc": 5}), "theta-check")[0] == EXIT_USAGE


def test_params(capsys, write_json):
    t = [0.2113, 0.4771]
    path = write_json("eig.json", {"points": [[0.1, 0.3], [0.1 + t[0], 0.3 + t[1]]], "t": t})
    code, out = run(capsys, "params", path)
    assert code == EXIT_PASS
    report = json.loads(out)
    assert report["metadata"]["count"] == 2
    assert report["metadata"]["oracle_counts"] == {"F2": 2, "F3": 2}


@mark.parametrize("payload", ({"points": [[0.1, 0.3]], "t": [0.5, 0.0]},
                              {"points": [], "t": [0.2, 0.4]},
                              {"t": [0.2, 0.4]}))
def test_params_usage_errors(capsys, write_json, payload):
    assert run(capsys, "params", write_json("eig.json", payload))[0] == EXIT_USAGE


def test_params_missing_file(capsys, tmp_path):
    assert run(capsys, "params", str(tmp_path / "absent.json"))[0] == EXIT_USAGE


@mark.parametrize("n1 n2 n".split(), (("2", "2", "9"), ("1", "2", "2"), ("3", "3", "2")))
def test_klr_usage_errors(capsys, n1, n2, n):
    assert run(capsys, "klr-verify", n1, n2, n)[0] == EXIT_USAGE


def test_klr_verify(capsys):
    code, out = run(capsys, "--samples", "1", "klr-verify", "2", "2", "2")
    assert code == EXIT_PASS
    report = json.loads(out)
    assert report["metadata"]["quiver"]["meta"]["d"] == 2


def test_hecke_verify_sl2(capsys):
    code, out = run(capsys, "--samples", "2", "hecke-verify", "--datum", "sl2")
    report = json.loads(out)
    assert code == EXIT_PASS, [c for c in report["checks"] if not c["pass"]]


@mark.parametrize("datum", ("e8", "g2"))
def test_unknown_datum_is_a_usage_error(capsys, caplog, datum):
    assert run(capsys, "hecke-verify", "--datum", datum)[0] == EXIT_USAGE
    assert f"unknown datum '{datum}'" in caplog.text
