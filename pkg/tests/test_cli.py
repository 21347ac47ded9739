import json
import subprocess
import sys

import pytest

from strata.cli import main
from strata.report import validate_report

from conftest import EJ2, SIX, SIX_NO_SIGMA

SIX_MODS = """module T1 over lambda { dims: 1 0 1 1 1 0; map a = [[1]]; map e = [[1]]; map l = [[1]]; }
module T2 over lambda { dims: 0 1 0 0 0 0; }
module T3 over lambda { dims: 0 0 0 0 0 1; }
module N over lambda { dims: 0 0 1 1 1 0; map e = [[1]]; map l = [[1]]; }
"""


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "ej2.alg": EJ2,
        "lam.alg": "algebra lam over Q { vertices: 1 2 3; arrows: a: 1->2; }",
        "six.alg": SIX,
        "six2.alg": SIX_NO_SIGMA,
        "six2.mod": SIX_MODS,
        "six2.ss": "system theta over lambda { modules: T1 T2 T3; order: 1 2 3; }",
        "delta.ss": "system delta over lambda { modules: S1 S2 S3; }",
        "delta_rev.ss": "system delta over lambda { modules: S1 S2 S3; order: 3 2 1; }",
        "psi.ss": "system psi over gamma { modules: S2 P1 S3; }",
        "bad.alg": SIX.replace("e*b - l*g;", "e*b - l*g, e*a - e*b*s;"),
    }.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name.replace(".", "_")] = str(p)
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--output", "json")
    d = json.loads(out)
    validate_report(d)
    return code, d


def test_ext_dimension(capsys, files):
    code, d = run_json(capsys, "ext", "--algebra", files["lam_alg"], "--n", 1, "--from", "S1", "--to", "S2")
    assert code == 0 and d["checks"][0]["data"]["dimension"] == 1


def test_build_and_parse(capsys, files):
    code, d = run_json(capsys, "build", "--algebra", files["ej2_alg"])
    assert code == 0 and d["checks"][0]["data"]["dim"] == 5
    code, out = run(capsys, "parse", "--algebra", files["ej2_alg"])
    assert code == 0 and "a*b" in out


def test_split_ext(capsys, files):
    code, d = run_json(capsys, "split-ext", "build", "--algebra", files["ej2_alg"], "--arrows", "b")
    data = d["checks"][0]["data"]
    assert code == 0 and (data["dim_gamma"], data["dim_lambda"], data["dim_ideal"]) == (5, 4, 1)


def test_split_fails_exit_code(capsys, files):
    code, d = run_json(capsys, "split-ext", "--algebra", files["bad_alg"], "--arrows", "b,g")
    assert code == 1 and d["status"] == "fail" and "SplitFails" in d["checks"][0]["data"]["error"]


def test_check_ss_pass_and_fail(capsys, files):
    args = ["check-ss", "--algebra", files["ej2_alg"], "--arrows", "b"]
    code, d = run_json(capsys, *args, "--system", files["delta_ss"])
    assert code == 0 and d["status"] == "pass"
    code, d = run_json(capsys, *args, "--system", files["delta_rev_ss"])
    assert code == 1 and d["status"] == "fail"


def test_lift_and_epss(capsys, files):
    args = ["--algebra", files["six2_alg"], "--arrows", "b,g", "--modules", files["six2_mod"],
            "--system", files["six2_ss"]]
    code, d = run_json(capsys, "lift", *args)
    assert code == 0, d
    code, d = run_json(capsys, "epss", *args)
    assert code == 0, d


def test_restrict_reports_failed_hypothesis(capsys, files):
    code, d = run_json(capsys, "restrict", "--algebra", files["ej2_alg"], "--arrows", "b",
                       "--system", files["psi_ss"])
    assert code == 2 and d["status"] == "hypothesis_failed"


def test_filtration(capsys, files):
    args = ["filtration", "--algebra", files["six2_alg"], "--arrows", "b,g", "--modules", files["six2_mod"],
            "--system", files["six2_ss"]]
    code, d = run_json(capsys, *args, "--module", "N")
    assert code == 1
    code, d = run_json(capsys, *args, "--module", "T1")
    assert code == 0


def test_usage_and_input_errors(capsys, files, tmp_path):
    code, _ = run(capsys, "ext", "--bogus")
    assert code == 3
    missing = tmp_path / "missing.alg"
    code, _ = run(capsys, "build", "--algebra", missing)
    assert code == 3
    code, d = run_json(capsys, "ext", "--algebra", files["lam_alg"], "--from", "S9", "--to", "S1")
    assert code == 3 and d["status"] == "error"


def test_verify_fixture(capsys):
    code, d = run_json(capsys, "verify", "--fixture", "ej2")
    assert code == 0 and d["status"] == "pass"


def test_json_is_byte_identical(capsys, files):
    args = ["epss", "--algebra", files["six2_alg"], "--arrows", "b,g", "--modules", files["six2_mod"],
            "--system", files["six2_ss"], "--output", "json", "--seed", "5"]
    _, a = run(capsys, *args)
    _, b = run(capsys, *args)
    assert a == b and "timing" not in json.loads(a)
    _, c = run(capsys, *args, "--timing")
    assert "timing" in json.loads(c)


def test_field_override(capsys, files):
    code, d = run_json(capsys, "build", "--algebra", files["ej2_alg"], "--field", "f:2")
    assert code == 0 and d["field"] == "F2"


def test_console_script(files):
    r = subprocess.run([sys.executable, "-m", "strata.cli", "hom", "--algebra", files["lam_alg"],
                        "--from", "P1", "--to", "S1", "--output", "json"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["checks"][0]["data"]["dimension"] == 1
