"""
Tests of the `verify` and `model export` commands
"""

from __future__ import annotations

import json

import pytest
from typer.testing import CliRunner

from dissipative_observables.cli import app

runner = CliRunner()


@pytest.mark.parametrize(
    "args",
    (
        pytest.param(["--model", "qubit-dephasing"], id="qubit-dephasing"),
        pytest.param(["--model", "qubit-dephasing-h1"], id="qubit-dephasing-h1"),
        pytest.param(
            ["--model", "pure-decoherence", "--rates", "1,2,3"], id="pure-decoherence"
        ),
        pytest.param(
            ["--model", "discrete-position", "--dim", "4"], id="discrete-position"
        ),
        pytest.param(
            [
                "--model",
                "damped-oscillator",
                "--dim",
                "9",
                "--truncation-pair",
                "8,16",
            ],
            id="damped-oscillator",
        ),
    ),
)
def test_verify_passes(args):
    result = runner.invoke(app, ["--no-logging", "verify", *args])

    assert result.exit_code == 0, result.exc_info
    assert "Checks passing: 100.00%" in result.stdout
    assert "FAIL" not in result.stdout
    assert "PASS CPTP" in result.stdout


def test_verify_unknown_model():
    result = runner.invoke(app, ["--no-logging", "verify", "--model", "qubit-h2"])

    assert result.exit_code == 1


def test_verify_unsupported_override():
    result = runner.invoke(
        app, ["--no-logging", "verify", "--model", "qubit-dephasing", "--dim", "3"]
    )

    assert result.exit_code == 1


@pytest.mark.parametrize(
    "truncation_pair", (pytest.param("8", id="one"), pytest.param("8,a", id="nan"))
)
def test_verify_bad_truncation_pair(truncation_pair):
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "verify",
            "--model",
            "damped-oscillator",
            "--truncation-pair",
            truncation_pair,
        ],
    )

    assert result.exit_code == 2


def test_model_export_then_spec(tmp_path):
    out = tmp_path / "specs" / "qubit.json"

    result_export = runner.invoke(
        app,
        [
            "--no-logging",
            "model",
            "export",
            "qubit-dephasing",
            "--out",
            str(out),
            "--gamma",
            "2",
        ],
    )
    assert result_export.exit_code == 0, result_export.exc_info
    raw = json.loads(out.read_text())
    assert raw["dim"] == 2
    assert raw["jumps"][0]["rate"] == 1.0
    assert raw["canonical_basis"]["labels"] == ["sigma1", "sigma2", "sigma3"]

    result = runner.invoke(
        app,
        ["--no-logging", "contract", "--spec", str(out), "--times", "1,2,3,4,5"],
    )
    assert result.exit_code == 0, result.exc_info
    res = json.loads(result.stdout)
    assert res["model"] == str(out)
    assert res["classification"]["label"] == "e2"


def test_model_export_unknown_model(tmp_path):
    result = runner.invoke(
        app,
        ["--no-logging", "model", "export", "qubit", "--out", str(tmp_path / "q.json")],
    )

    assert result.exit_code == 1


@pytest.mark.parametrize(
    "args",
    (
        pytest.param([], id="neither-model-nor-spec"),
        pytest.param(
            ["--model", "qubit-dephasing", "--spec", "{spec}"], id="model-and-spec"
        ),
        pytest.param(["--spec", "{spec}", "--gamma", "2"], id="spec-with-override"),
        pytest.param(
            ["--model", "qubit-dephasing", "--times", "1,2,3", "--schedule", "1:4:3"],
            id="times-and-schedule",
        ),
        pytest.param(
            ["--model", "qubit-dephasing", "--schedule", "1:4"], id="bad-schedule"
        ),
        pytest.param(["--model", "qubit-dephasing", "--times", "a,b"], id="bad-times"),
        pytest.param(["--model", "qubit-dephasing", "--format", "xml"], id="format"),
        pytest.param(
            ["--model", "qubit-dephasing", "--cond-max", "-1"], id="bad-cond-max"
        ),
    ),
)
def test_usage_errors(test_data_dir, args):
    spec = str(test_data_dir / "specs" / "qubit-dephasing.json")

    result = runner.invoke(
        app, ["--no-logging", "structure", *(v.format(spec=spec) for v in args)]
    )

    assert result.exit_code == 2
