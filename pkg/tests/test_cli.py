"""Command-line interface: subcommands, JSON schema, exit codes."""

import json

import numpy as np
import pytest

from petrovtypes.cli import run
from petrovtypes.linalg import matrix_to_json
from petrovtypes.petrov import JordanStructure, assemble_normal_pair


@pytest.fixture
def pair_file(tmp_path):
    st = JordanStructure(((0.0, (4,)),), ())
    pair = assemble_normal_pair(st, [1])
    rng = np.random.default_rng(5)
    while True:
        t = rng.normal(size=(4, 4))
        if np.linalg.cond(t) <= 30:
            break
    tinv = np.linalg.inv(t)
    a = t @ pair.a @ tinv
    g = tinv.T @ pair.space.gram @ tinv
    g = 0.5 * (g + g.T)
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"a": matrix_to_json(a), "gram": matrix_to_json(g)}))
    return str(path)


def _json_out(capsys):
    out = capsys.readouterr().out
    return json.loads(out)


def test_classify_json(pair_file, capsys):
    code = run(["classify", "--input", pair_file, "--json"])
    payload = _json_out(capsys)
    assert code == 0
    assert payload["schema"] == "1"
    assert payload["geometric"]["label"] == "VI"
    assert payload["algebraic"]["label"] == "VI"
    assert payload["negative_index"] == 2
    assert payload["tolerance"] == 1e-9


def test_classify_markdown(pair_file, capsys):
    code = run(["classify", "--input", pair_file])
    out = capsys.readouterr().out
    assert code == 0
    assert "geometric type: VI" in out


def test_classify_tol_override_echoed(pair_file, capsys):
    run(["classify", "--input", pair_file, "--tol", "1e-7", "--json"])
    assert _json_out(capsys)["tolerance"] == 1e-7


def test_classify_env_tolerance(pair_file, capsys, monkeypatch):
    monkeypatch.setenv("PETROV_TOL", "1e-8")
    run(["classify", "--input", pair_file, "--json"])
    assert _json_out(capsys)["tolerance"] == 1e-8


def test_classify_missing_file_exit_one(tmp_path, capsys):
    code = run(["classify", "--input", str(tmp_path / "nope.json")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_classify_bad_json_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["classify", "--input", str(bad)]) == 1


def test_catalog_list(capsys):
    code = run(["catalog", "list", "--json"])
    payload = _json_out(capsys)
    assert code == 0
    assert len(payload["examples"]) == 15
    assert payload["schema"] == "1"


def test_catalog_eval(capsys):
    code = run(["catalog", "eval", "0-1", "--point", "0.2,1.5707963267948966", "--json"])
    payload = _json_out(capsys)
    assert code == 0
    shape = np.array(payload["shape"]["data"]).reshape(2, 2)
    assert abs(shape[0, 1] - 1.0) < 1e-12
    assert abs(shape).sum() == pytest.approx(1.0, abs=1e-12)


def test_catalog_eval_needs_point(capsys):
    assert run(["catalog", "eval", "b"]) == 1


def test_catalog_eval_wrong_point_length(capsys):
    assert run(["catalog", "eval", "b", "--point", "0.1"]) == 1


def test_verify_run_single_example(capsys):
    code = run(["verify", "run", "--id", "e", "--samples", "3", "--json"])
    payload = _json_out(capsys)
    assert code == 0
    assert payload["all_passed"] is True
    checks = {row["check"] for row in payload["checks"]}
    assert checks == {"shape_fd", "gauss", "codazzi"}


def test_report_table_two(capsys):
    code = run(["report", "--table", "2", "--samples", "2", "--json"])
    payload = _json_out(capsys)
    assert code == 0
    assert payload["mismatches"] == []


def test_report_table_one_markdown(capsys):
    code = run(["report", "--table", "1", "--samples", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "| ambient |" in out


def test_usage_error_exit_two(capsys):
    assert run(["frobnicate"]) == 2
    assert run([]) == 2


def test_json_output_deterministic(pair_file, capsys):
    run(["classify", "--input", pair_file, "--json"])
    first = capsys.readouterr().out
    run(["classify", "--input", pair_file, "--json"])
    second = capsys.readouterr().out
    assert first == second
