import json

import pytest

from qdissect.cli import run

SCHEMA = {"command", "version", "ring", "order", "items", "duration_ms"}


def report(tmp_path, *argv):
    out = tmp_path / "r.json"
    code = run([*argv, "--out", str(out)])
    return code, json.loads(out.read_text())


def test_coeff(capsys):
    assert run(["coeff", "--gf", "f1^-3*f3^-3", "--upto", "8"]) == 0
    assert capsys.readouterr().out.strip() == "1 3 9 25 60 135 296 609 1215"


def test_coeff_mod(capsys):
    assert run(["coeff", "--upto", "8", "--mod", "9"]) == 0
    assert capsys.readouterr().out.strip() == " ".join(str(v % 9) for v in [1, 3, 9, 25, 60, 135, 296, 609, 1215])


def test_json_schema(tmp_path):
    code, rep = report(tmp_path, "theorem1", "--limit", "2000")
    assert code == 0 and set(rep) == SCHEMA
    assert rep["order"] == 2000 and len(rep["items"]) == 8
    assert all(i["kind"] == "claim" and i["status"] == "VerifiedUpTo" for i in rep["items"])


def test_rerun_is_byte_identical(tmp_path):
    texts = []
    for _ in range(2):
        out = tmp_path / "r.json"
        assert run(["theorem3", "--limit", "1500", "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        rep["duration_ms"] = 0
        texts.append(json.dumps(rep, sort_keys=True))
    assert texts[0] == texts[1]


def test_check_pass_and_fail(tmp_path):
    code, rep = report(tmp_path, "check", "--progression", "12n+6,9", "--mod", "2", "--limit", "3000")
    assert code == 0 and [i["b"] for i in rep["items"]] == [6, 9]
    code, rep = report(tmp_path, "check", "--a", "5", "--b", "1", "--mod", "5", "--limit", "100")
    assert code == 1 and rep["items"][0]["refuted_at"] == 1


def test_exact_flag(tmp_path):
    code, rep = report(tmp_path, "check", "--a", "3", "--b", "2", "--mod", "9", "--limit", "800", "--exact")
    assert code == 0 and rep["items"][0]["exact_check"] is True


def test_verify_identities(tmp_path):
    code, rep = report(tmp_path, "verify-identities", "--order", "120")
    assert code == 0
    names = [i["name"] for i in rep["items"]]
    assert names == sorted(names) and all(i["equal"] for i in rep["items"])


def test_verify_only(tmp_path):
    code, rep = report(tmp_path, "verify-identities", "--order", "50", "--only", "G.3n+2", "--only", "P.q3")
    assert code == 0 and [i["name"] for i in rep["items"]] == ["G.3n+2", "P.q3"]


def test_verify_custom_catalog_mismatch(tmp_path):
    cat = tmp_path / "bad.catalog"
    cat.write_text("bad | extract(f1^-3*f3^-3, 3, 2) | 8*f3^9/f1^15 | | perturbed\n")
    code, rep = report(tmp_path, "verify-identities", "--catalog", str(cat), "--order", "20")
    assert code == 1 and rep["items"][0]["mismatch"] == 0


def test_pdissect(tmp_path):
    code, rep = report(tmp_path, "pdissect", "--p", "5,7", "--order", "200")
    assert code == 0 and [i["p"] for i in rep["items"]] == [5, 7]


def test_theorem2(tmp_path):
    code, rep = report(tmp_path, "theorem2", "--p", "5", "--alpha", "1", "--limit", "3000")
    assert code == 0 and [i["b"] for i in rep["items"]] == [83, 128, 173, 218]


def test_quadratic(tmp_path):
    code, rep = report(tmp_path, "quadratic-criterion", "--pmax", "60")
    assert code == 0 and rep["items"][0]["p"] == 5


def test_scan(tmp_path):
    code, rep = report(tmp_path, "scan", "--gf", "f1^-1", "--amax", "5", "--moduli", "5", "--limit", "2000")
    assert code == 0 and [(i["a"], i["b"], i["m"]) for i in rep["items"]] == [(5, 4, 5)]
    assert rep["items"][0]["empirical"] is True


def test_oracle(capsys):
    assert run(["oracle", "--upto", "60", "--compare"]) == 0
    out = capsys.readouterr().out
    assert "dp vs series: agree" in out and "dp vs convolution: agree" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["theorem2", "--p", "7"],
        ["coeff", "--gf", "f1^-3*(", "--upto", "3"],
        ["coeff", "--upto", "3", "--bogus"],
        ["nonsense"],
        ["check", "--mod", "2"],
        ["check", "--progression", "12x+1", "--mod", "2"],
        ["scan", "--amax", "12", "--limit", "100"],
        ["pdissect", "--p", "9"],
        ["coeff", "--upto", "3", "--mod", "1"],
        ["verify-identities", "--only", "no-such-identity"],
        ["verify-identities", "--catalog", "/does/not/exist"],
        ["oracle", "--restricted", "x"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("QDISSECT_THREADS", "3")
    assert run(["verify-identities", "--order", "60"]) == 0
    monkeypatch.setenv("QDISSECT_THREADS", "lots")
    assert run(["verify-identities", "--order", "60"]) == 2


def test_figures(tmp_path):
    figs = tmp_path / "figs"
    assert run(["scan", "--amax", "6", "--moduli", "3,9", "--limit", "600", "--figures", str(figs)]) == 0
    assert run(["theorem1", "--limit", "500", "--figures", str(figs)]) == 0
    assert run(["coeff", "--upto", "200", "--figures", str(figs)]) == 0
    assert run(["quadratic-criterion", "--pmax", "40", "--figures", str(figs)]) == 0
    assert run(["verify-identities", "--order", "40", "--figures", str(figs)]) == 0
    for name in ("scan.png", "claims.png", "coefficients.png", "quadratic.png", "identities.png"):
        assert (figs / name).stat().st_size > 1000
