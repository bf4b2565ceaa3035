from __future__ import annotations

import json

import pytest

from cayley import suite
from cayley.families import octonion_cayley_form
from cayley.formats import parse_form
from cayley.main import main
from cayley.suite import Check


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


# -----------------------------
# verify-all
# -----------------------------


def test_verify_all_filter(capsys):
    code, out = run(capsys, "verify-all", "--filter", "urbantke")
    assert code == 0
    assert out.count("PASS") == 3
    assert out.rstrip().endswith("3/3 checks passed, 0 failed")


def test_verify_all_json(capsys):
    code, out = run(capsys, "verify-all", "--json", "--filter", "sigma-")
    rows = json.loads(out)
    assert code == 0
    assert [r["name"] for r in rows] == ["sigma-euclidean", "sigma-split", "sigma-lorentzian", "sigma-reality"]
    assert all("ms" not in r and r["status"] == "pass" for r in rows)

    _, out = run(capsys, "verify-all", "--json", "--timings", "--filter", "sigma-split")
    assert "ms" in json.loads(out)[0]


def test_verify_all_reports_failure(capsys, monkeypatch):
    monkeypatch.setattr(suite, "checks", lambda: [
        Check("always-ok", "x = x", lambda: None),
        Check("always-fails", "0 = 1", lambda: "e0123: 0 != 1"),
    ])
    code, out = run(capsys, "verify-all")
    assert code == 1
    assert "FAIL  always-fails  [0 = 1]" in out
    assert "e0123: 0 != 1" in out
    assert "1/2 checks passed, 1 failed" in out


# -----------------------------
# metric
# -----------------------------


@pytest.mark.parametrize("name, signature", [("cayley-plus", "(8,0)"), ("phi-split", "(4,4)")])
def test_metric_numeric(capsys, name, signature):
    code, out = run(capsys, "metric", "--in", f"builtin:{name}", "--mode", "numeric")
    assert code == 0
    assert f"signature: {signature}" in out


def test_metric_numeric_3form(capsys):
    code, out = run(capsys, "metric", "--in", "builtin:3form-g2", "--mode", "numeric")
    assert code == 0
    assert "signature: (7,0)" in out


def test_metric_exact(capsys):
    code, out = run(capsys, "metric", "--in", "builtin:cayley-plus", "--mode", "exact", "--candidate", "builtin:delta8")
    assert code == 0
    assert "compatible: yes" in out
    code, out = run(capsys, "metric", "--in", "builtin:cayley-plus", "--mode", "exact",
                    "--candidate", "builtin:eta8-split")
    assert code == 1
    assert "compatible: no" in out


def test_metric_exact_needs_candidate():
    with pytest.raises(SystemExit) as info:
        main(["metric", "--in", "builtin:cayley-plus", "--mode", "exact"])
    assert info.value.code == 2


def test_metric_rejects_wrong_grade(capsys, tmp_path):
    path = tmp_path / "w.form"
    path.write_text("form dim=8 grade=2\n[1,0,0,0] e0^e1\n", encoding="utf-8")
    code, _ = run(capsys, "metric", "--in", str(path), "--mode", "numeric")
    assert code == 1


def test_unknown_builtin(capsys):
    code, _ = run(capsys, "metric", "--in", "builtin:nope", "--mode", "numeric")
    assert code == 2


# -----------------------------
# classify / bilinear / orbit-dim
# -----------------------------


@pytest.mark.parametrize(
    "name, expected",
    [
        ("psi-one", ["pure: no", "stabiliser dim: 21", "annihilator dim: 0"]),
        ("psi-L", ["pure: no", "stabiliser dim: 15"]),
        ("psi-plus", ["pure: yes", "real index: 4", "annihilator dim: 4"]),
    ],
)
def test_classify(capsys, name, expected):
    code, out = run(capsys, "classify", "--spinor", f"builtin:{name}")
    assert code == 0
    for line in expected:
        assert line in out


def test_bilinear(capsys):
    code, out = run(capsys, "bilinear", "-k", "4", "--psi", "builtin:psi-one")
    assert code == 0
    assert parse_form(out).to_form() == octonion_cayley_form("O")


def test_bilinear_bad_degree(capsys):
    code, _ = run(capsys, "bilinear", "-k", "9", "--psi", "builtin:psi-one")
    assert code == 1


def test_orbit_dim(capsys):
    code, out = run(capsys, "orbit-dim", "--in", "builtin:cayley-plus")
    assert code == 0
    assert "orbit dimension: 43" in out
    assert "stabiliser dimension: 21" in out


# -----------------------------
# urbantke
# -----------------------------


def test_urbantke_lorentzian(capsys):
    code, out = run(capsys, "urbantke", "--in", "builtin:sigma-L", "--mode", "lorentzian")
    assert code == 0
    assert "signature: (3,1)" in out


def test_urbantke_real_triple_in_lorentzian_mode(capsys):
    code, _ = run(capsys, "urbantke", "--in", "builtin:sigma", "--mode", "lorentzian")
    assert code == 1


def test_urbantke_bad_file(capsys, tmp_path):
    path = tmp_path / "t.triple"
    path.write_text("form dim=4 grade=2\n[1,0,0,0] e0^e1\n", encoding="utf-8")
    code, _ = run(capsys, "urbantke", "--in", str(path), "--mode", "real")
    assert code == 2
