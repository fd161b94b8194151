"""
Tests for the command-line front end: output, exit codes and determinism.
"""

import json

import pytest

from hypertoric.views.cli import COMMANDS, build_parser, main
from hypertoric.views.errors import EXIT_ASSERTION_FAILED, EXIT_DOMAIN_ERROR, EXIT_INVALID_INPUT, EXIT_OK

DIAGONAL_3 = {"n": 3, "lambda0_basis": [[1, -1, 0], [0, 1, -1]], "eta": [1, 0, 0], "xi": [1, 1]}
DIAGONAL_2 = {"n": 2, "lambda0_basis": [[1, -1]], "eta": [1, 0], "xi": [1]}
DIAGONAL_3_QUANTIZED = {"n": 3, "lambda0_basis": [[1, -1, 0], [0, 1, -1]], "basepoint": ["1", "0", "0"], "xi": [1, 1]}
THETA = {"n": 3, "lambda0_basis": [[1, 1, 1]], "basepoint": ["0", "0", "0"], "xi": [1]}


@pytest.fixture(autouse=True)
def testing_env(monkeypatch):
    """main() installs the configuration named by HYPO_ENV."""
    monkeypatch.setenv("HYPO_ENV", "testing")


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parser_registers_every_command():
    parser = build_parser()
    for name in ("analyze", "dual", "cells", "algebra", "koszul", "bimodules", "symmetry", "verify"):
        assert name in COMMANDS
        options = parser.parse_args([name, "instance.json"])
        assert options.command == name
        assert options.format == "json"


def test_analyze(capsys, write_instance):
    code, out, _ = _run(capsys, "analyze", write_instance(DIAGONAL_3))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["command"] == "analyze"
    assert report["passed"] is True
    assert report["results"]["counts"] == {"feasible": 7, "bounded": 4, "bounded_feasible": 3}
    assert report["results"]["bounded_feasible"] == ["+++", "-++", "--+"]
    assert report["results"]["chamber_graph_connected"] is True


def test_analyze_quantized(capsys, write_instance):
    code, out, _ = _run(capsys, "analyze", write_instance(DIAGONAL_3_QUANTIZED))
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert results["chamber_count"]["count"] == 7
    assert results["regularity"]["integral"] is True


def test_output_is_deterministic(capsys, write_instance):
    path = write_instance(DIAGONAL_3)
    _, first, _ = _run(capsys, "analyze", path)
    _, second, _ = _run(capsys, "analyze", path)
    assert first == second


def test_table_format(capsys, write_instance):
    code, out, _ = _run(capsys, "analyze", write_instance(DIAGONAL_2), "--format", "table")
    assert code == EXIT_OK
    assert out.startswith("analyze  version=")
    assert "counts.feasible" in out


def test_dual_involution(capsys, write_instance):
    code, out, _ = _run(capsys, "dual", write_instance(DIAGONAL_2))
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert results["dual"]["lambda0_basis"] == [[1, 1]]
    assert results["involution"] is True


def test_cells(capsys, write_instance):
    code, out, _ = _run(capsys, "cells", write_instance(DIAGONAL_3_QUANTIZED))
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert results["partitions"]["two_sided"]["blocks"] == [["+++"], ["-++", "--+"]]
    assert results["goldie_ranks"] == {"+++": 3, "-++": 1, "--+": 1}
    assert results["h_vector"] == [1, 1, 1]


def test_algebra(capsys, write_instance):
    code, out, _ = _run(capsys, "algebra", write_instance(DIAGONAL_2))
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert results["graded_dims"] == [2, 2, 1]
    assert results["hilbert_series"] == [["1", "t"], ["t", "1 + t**2"]]
    assert results["decomposition"]["matrix"] == [[1, 1], [0, 1]]
    assert results["deformation_free_rank_one"] is True


def test_koszul(capsys, write_instance):
    code, out, _ = _run(capsys, "koszul", write_instance(DIAGONAL_2))
    assert code == EXIT_OK
    assert json.loads(out)["results"]["dims_match"] is True


def test_bimodules(capsys, write_instance):
    code, out, _ = _run(capsys, "bimodules", write_instance(DIAGONAL_2), "--max-degree", "4")
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert results["shuffling"]["transfer_matrix"] == [[1, 1], [1, 2]]
    assert results["cartesian"] is True


def test_symmetry(capsys, write_instance):
    code, out, _ = _run(capsys, "symmetry", write_instance(DIAGONAL_2))
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert results["orders"] == {"V": 2, "W": 2}
    assert results["walls"] == [[1, 1]]


@pytest.mark.slow
def test_verify(capsys, write_instance):
    code, out, _ = _run(capsys, "verify", write_instance(DIAGONAL_2), "--seed", "3", "--suite-size", "3")
    report = json.loads(out)
    assert report["results"]["failed"] == []
    assert code == EXIT_OK


def test_malformed_json(capsys, write_instance):
    code, out, err = _run(capsys, "analyze", write_instance('{"n": 3,\n  oops}'))
    assert code == EXIT_INVALID_INPUT
    assert out == ""
    payload = json.loads(err)
    assert payload["error"] == "ParseError"
    assert payload["line"] == 2


def test_invalid_field(capsys, write_instance):
    code, _, err = _run(capsys, "analyze", write_instance({**DIAGONAL_2, "eta": [1]}))
    assert code == EXIT_INVALID_INPUT
    assert json.loads(err)["code"] == "INVALID_LENGTH"


def test_missing_file(capsys, tmp_path):
    code, _, err = _run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == EXIT_INVALID_INPUT
    assert json.loads(err)["error"] == "FileNotFoundError"


def test_negative_max_degree(capsys, write_instance):
    code, _, _ = _run(capsys, "algebra", write_instance(DIAGONAL_2), "--max-degree", "-1")
    assert code == EXIT_INVALID_INPUT


def test_domain_error(capsys, write_instance):
    code, _, err = _run(capsys, "cells", write_instance(THETA))
    assert code == EXIT_DOMAIN_ERROR
    assert json.loads(err)["error"] == "NotRegularIntegral"


def test_failed_chamber_count_exits_one(capsys, write_instance, monkeypatch):
    monkeypatch.setattr("hypertoric.services.arrangement.independent_subset_count", lambda lattice, indices: 1)
    code, _, err = _run(capsys, "analyze", write_instance(THETA))
    assert code == EXIT_ASSERTION_FAILED
    assert json.loads(err)["error"] == "AssertionError"


def test_bimodules_translation_across_chambers(capsys, write_instance):
    instance = dict(DIAGONAL_2, eta_prime=[-1, 0])
    code, out, _ = _run(capsys, "bimodules", write_instance(instance), "--max-degree", "4")
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert results["translation"] == {"round_trip_onto": False, "chambers_contained": False}
    assert results["passed"] is True
