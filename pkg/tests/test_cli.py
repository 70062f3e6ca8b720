import json
import subprocess
import sys

import numpy as np
import pytest

from zetasing import cli
from zetasing.cli import main
from zetasing.errors import DegenerateInputError
from zetasing.lagrangian import LagrangianPair
from zetasing.oracle import paper_example
from zetasing.problem import problem_document
from zetasing.report import report_from_dict
from zetasing.spectral_data import EigenvalueSpec


def _write(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def example3_file(tmp_path, example3):
    spec, pair = example3
    return _write(tmp_path, problem_document(spec, pair, 3.0, label="example 3"))


def test_analyze_json_is_deterministic(example3_file):
    cmd = [sys.executable, "-m", "zetasing", "analyze", example3_file]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    doc = json.loads(first)
    assert doc["log_at_zero_coeff"] == -1
    assert [b["ell_xi"] for b in doc["log_branches"]] == [1, 2, 3, 4]


def test_report_round_trip(example3_file, capsys):
    assert main(["analyze", example3_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    rep = report_from_dict(doc)
    assert rep.log_at_zero_coeff == -1
    assert len(rep.log_branches) == 4
    assert rep.log_branches[0].g_leading_coeff == pytest.approx(
        complex(*doc["log_branches"][0]["g_leading"]))


def test_analyze_output_file_and_cutoff(example3_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["analyze", example3_file, "--cutoff", "1.5", "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["log_branches"]) == 2
    assert doc["policy"]["xi_cutoff"] == 1.5


def test_analyze_debug_series(example3_file, capsys):
    assert main(["analyze", example3_file, "--debug-series"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc["series"]) == {"p", "u", "log"}


def test_text_and_plotdata(example3_file, capsys):
    assert main(["analyze", example3_file, "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "example 3" in text and "log" in text
    assert main(["analyze", example3_file, "--format", "plotdata"]) == 0
    rows = [ln.split("\t") for ln in capsys.readouterr().out.splitlines()]
    assert rows[0] == ["location", "type", "order", "abs_leading"]
    assert [r[1] for r in rows[1:]] == ["log0"] + ["log"] * 4


def test_schema_error_names_field(tmp_path, capsys):
    doc = {"q0": 1, "nus": [0.7], "A": [[0, 1], [-1]], "B": [[1, 0], [0, 1]], "xi_cutoff": 1}
    assert main(["analyze", _write(tmp_path, doc)]) == 2
    assert "A[1]" in capsys.readouterr().err


@pytest.mark.parametrize("doc", [
    {"nus": [0.7], "lambdas": [0.1], "A": [[1]], "B": [[0]]},
    {"nus": [1.2], "A": [[1]], "B": [[0]], "xi_cutoff": 1},
    {"nus": [0.7], "A": [[1]], "B": [[0]]},
    {"nus": [0.7], "A": [[1]], "B": [[0]], "xi_cutoff": 1, "colour": "red"},
])
def test_schema_errors(tmp_path, doc):
    assert main(["analyze", _write(tmp_path, doc)]) == 2


def test_missing_file(tmp_path):
    assert main(["analyze", str(tmp_path / "nope.json")]) == 2


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert main(["analyze", str(path)]) == 2


def test_lagrangian_violation(tmp_path, capsys):
    doc = {"nus": [0.3], "A": [[0]], "B": [[0]], "xi_cutoff": 1}
    path = _write(tmp_path, doc)
    assert main(["analyze", path]) == 3
    assert "rank" in capsys.readouterr().err
    assert main(["validate", path]) == 3


def test_internal_inconsistency(example3_file, monkeypatch):
    # a valid pair cannot give p = 0, so force the degenerate path
    def boom(*args, **kwargs):
        raise DegenerateInputError("p(x, y) vanished identically")

    monkeypatch.setattr(cli, "run_pipeline", boom)
    assert main(["analyze", example3_file]) == 4


def test_validate_ok(example3_file, capsys):
    assert main(["validate", example3_file]) == 0
    assert capsys.readouterr().out.startswith("ok:")


def test_lambdas_input(tmp_path, capsys):
    doc = {"lambdas": [-0.25, 0.24], "q0": 0, "A": [[0, 1], [-1, 0]], "B": [[1, 0], [0, 1]],
           "xi_cutoff": 2.0}
    assert main(["analyze", _write(tmp_path, doc)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["q0"] == 1 and rep["log_at_zero_coeff"] == -1


def test_boundary_residue_extension(tmp_path, capsys, example3):
    spec, pair = example3
    doc = problem_document(spec, pair, 1.0)
    doc["boundary_zeta_residue"] = 2
    assert main(["analyze", _write(tmp_path, doc)]) == 0
    assert json.loads(capsys.readouterr().out)["reg_residue_at_zero"] == -1


def test_friedrichs_report_is_empty(tmp_path, capsys):
    spec = EigenvalueSpec.from_nus([0.4], q0=1)
    pair = LagrangianPair(np.zeros((2, 2)), np.eye(2), 1)
    assert main(["analyze", _write(tmp_path, problem_document(spec, pair, 3.0))]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["log_at_zero_coeff"] == 0
    assert doc["poles"] == [] and doc["log_branches"] == []


def test_examples_single(capsys):
    argv = ["examples", "--id", "1", "-K", "5", "--alpha", "1", "--beta", "0.5", "--nu", "0.3"]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("PASS")
    assert out.count("residue") == 5


def test_examples_pole_orders(capsys):
    assert main(["examples", "--id", "4", "-K", "4"]) == 0
    out = capsys.readouterr().out
    for order in (2, 3, 4, 5):
        assert f"expected={order} " in out


def test_examples_all(capsys):
    assert main(["examples"]) == 0


def test_selftest_small(capsys):
    assert main(["selftest", "--n-det", "5", "--n-log", "5"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_case_file_matches_example(tmp_path, capsys):
    case = paper_example(4, K=3)
    doc = problem_document(case.spec, case.pair, case.xi_cutoff)
    assert main(["analyze", _write(tmp_path, doc)]) == 0
    poles = json.loads(capsys.readouterr().out)["poles"]
    assert [p["nominal_order"] for p in poles] == [2, 3, 4]
