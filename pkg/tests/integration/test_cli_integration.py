"""
Integration tests of the CLI
"""

from __future__ import annotations

import json

from typer.testing import CliRunner

import dissipative_observables
from dissipative_observables.cli import app

runner = CliRunner()


def test_version():
    result = runner.invoke(app, ["--version"])

    assert result.exit_code == 0, result.exc_info
    assert (
        result.stdout
        == f"dissipative-observables {dissipative_observables.__version__}\n"
    )


def test_model_list():
    result = runner.invoke(app, ["--no-logging", "model", "list"])

    assert result.exit_code == 0, result.exc_info
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 7
    assert lines[0].startswith("qubit-dephasing ")
    assert "contraction=e2" in lines[0]


def test_model_list_json():
    result = runner.invoke(app, ["--no-logging", "model", "list", "--json"])

    assert result.exit_code == 0, result.exc_info
    res = json.loads(result.stdout)
    assert [v["name"] for v in res] == [
        "qubit-dephasing",
        "qubit-dephasing-h3",
        "qubit-dephasing-h1",
        "damped-oscillator",
        "phase-damped-oscillator",
        "discrete-position",
        "pure-decoherence",
    ]
    assert res[0]["basis"] == ["sigma1", "sigma2", "sigma3"]
    assert res[0]["overrides"] == ["gamma"]
    assert res[3]["dim"] == 21


def test_unknown_subcommand():
    result = runner.invoke(app, ["--no-logging", "evaluate"])

    assert result.exit_code == 2
