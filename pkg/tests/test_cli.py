import json

import pytest

from qsuperhaar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_builtin(capsys):
    code, out, _ = run(capsys, "validate", "--symmetry", "glq:2")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["failed"] == []
    assert rep["poincare_prefix"] == [1, 2, 1, 0]


def test_validate_super_reports_zero_trace(capsys):
    code, out, _ = run(capsys, "validate", "--symmetry", "glq:1|1")
    assert code == 0
    assert json.loads(out)["trace_C"] == "0"


def test_validate_broken_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "d": 2, "parities": [0, 0], "birank": [2, 0],
        "R": [["q", "0", "0", "0"], ["0", "0", "p", "0"], ["0", "p", "1", "0"], ["0", "0", "0", "q"]],
    }))
    code, out, _ = run(capsys, "validate", "--symmetry", str(path))
    rep = json.loads(out)
    assert code == 1
    assert "yang_baxter" in rep["failed"]


def test_validate_not_closed(capsys, tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"d": 1, "parities": [0], "birank": [1, 0], "R": [["0"]]}))
    code, out, _ = run(capsys, "validate", "--symmetry", str(path))
    assert code == 1 and json.loads(out)["failed"] == ["closure"]


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["validate", "--symmetry", "missing.json"],
    ["validate", "--format", "xml"],
    ["verify", "--max-n", "-1"],
    ["verify", "--suite", "nope"],
    ["integrate", "--monomial", "{not json"],
    ["integrate"],
    ["hciz", "--symmetry", "glq:2", "--m", "1"],
    ["hciz", "--m", "1/0"],
    ["ortho", "--symmetry", "glq:1|1"],
    ["ortho", "--symmetry", "glq:1|1", "--lambda", "1,2"],
    ["ortho", "--symmetry", "glq:2", "--lambda", "1,1,1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_integrate_examples(capsys):
    code, out, _ = run(capsys, "integrate", "--symmetry", "glq:1", "--monomial", '{"I":[1],"J":[1],"K":[1],"L":[1]}')
    assert code == 0 and json.loads(out)["value"] == "1"
    code, out, _ = run(capsys, "integrate", "--symmetry", "glq:1|1", "--monomial", '{"I":[],"J":[],"K":[],"L":[]}')
    assert json.loads(out)["value"] == "0"
    code, out, _ = run(capsys, "integrate", "--symmetry", "glq:2", "--monomial", '{"I":[1],"J":[1],"K":[],"L":[]}')
    rep = json.loads(out)
    assert rep["value"] == "0" and "reason" in rep


def test_integrate_element_strategies(capsys):
    el = json.dumps([{"word": [["t", 1, 2], ["z", 2, 1]], "coef": "q"}])
    vals = []
    for strategy in ("leftmost", "rightmost"):
        code, out, _ = run(capsys, "integrate", "--symmetry", "glq:2", "--element", el, "--strategy", strategy)
        assert code == 0
        vals.append(json.loads(out)["value"])
    assert vals[0] == vals[1]


def test_hciz_example(capsys):
    code, out, _ = run(capsys, "hciz", "--symmetry", "glq:1|1", "--n", "2", "--m", "2,3", "--nn", "5,7")
    rep = json.loads(out)
    assert code == 0 and rep["equal"] and rep["lhs"] == rep["rhs"]
    assert set(rep) >= {"n", "lhs", "rhs", "equal", "perLambda"}


def test_characters_table(capsys):
    code, out, _ = run(capsys, "characters", "--symmetry", "glq:1|1", "--n", "1")
    rep = json.loads(out)
    assert code == 0
    assert rep["characters"][0]["S"] == "(p^2)*m1 + (-p^2)*m2"


def test_ortho_table(capsys):
    code, out, _ = run(capsys, "ortho", "--symmetry", "glq:1|1", "--lambda", "1")
    rep = json.loads(out)
    assert code == 0 and len(rep["rows"]) == 16 and all(r["equal"] for r in rep["rows"])


def test_poincare(capsys):
    code, out, _ = run(capsys, "poincare", "--symmetry", "glq:2", "--max-n", "3")
    assert json.loads(out)["prefix"] == [1, 2, 1, 0]


@pytest.mark.parametrize("argv", [
    ["verify", "--symmetry", "glq:1|1", "--max-n", "3", "--suite", "recursion"],
    ["verify", "--symmetry", "glq:2", "--max-n", "2", "--suite", "conditions"],
    ["verify", "--symmetry", "glq:1", "--max-n", "3", "--suite", "all"],
])
def test_verify_suites_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["passed"]


def test_text_format_and_out(capsys, tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "poincare", "--symmetry", "glq:2", "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "prefix" in text and "[1, 2, 1, 0]" in text


def test_seeded_hciz_is_reproducible(capsys):
    a = run(capsys, "hciz", "--symmetry", "glq:1", "--n", "2", "--seed", "4")[1]
    b = run(capsys, "hciz", "--symmetry", "glq:1", "--n", "2", "--seed", "4")[1]
    c = run(capsys, "hciz", "--symmetry", "glq:1", "--n", "2", "--seed", "5")[1]
    assert a == b and a != c
