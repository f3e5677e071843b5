"""
Tests of the `structure` and `contract` commands
"""

from __future__ import annotations

import io
import json

import numpy as np
import numpy.testing as npt
import pandas as pd
import pytest
from typer.testing import CliRunner

from dissipative_observables.cli import app
from dissipative_observables.serialisation import array_from_pairs

runner = CliRunner()

QUBIT_TIMES = "2,4,6,8,10"


def test_structure_qubit_dephasing():
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "structure",
            "--model",
            "qubit-dephasing",
            "--times",
            QUBIT_TIMES,
        ],
    )

    assert result.exit_code == 0, result.exc_info
    res = json.loads(result.stdout)
    assert res["model"] == "qubit-dephasing"
    assert [v["time"] for v in res["tensors"]] == [2.0, 4.0, 6.0, 8.0, 10.0]
    for tensor in res["tensors"]:
        values = array_from_pairs(tensor["C"])
        npt.assert_allclose(values[2, 0, 1], 2j * np.exp(-2 * tensor["time"]))

    report = res["limit_report"]
    assert report["converged"] is True
    assert report["limit"]["time"] == "inf"
    npt.assert_allclose(array_from_pairs(report["limit"]["C"])[2, 0, 1], 0.0)


def test_structure_csv_matches_json():
    args = [
        "--no-logging",
        "structure",
        "--model",
        "qubit-dephasing-h3",
        "--times",
        "0.5,1,1.5",
    ]
    result_json = runner.invoke(app, args)
    result_csv = runner.invoke(app, [*args, "--format", "csv"])

    assert result_json.exit_code == 0, result_json.exc_info
    assert result_csv.exit_code == 0, result_csv.exc_info

    res_json = json.loads(result_json.stdout)
    res_csv = pd.read_csv(io.StringIO(result_csv.stdout))
    assert list(res_csv.columns) == ["time", "k", "i", "j", "re", "im"]
    for tensor in res_json["tensors"]:
        values = array_from_pairs(tensor["C"])
        rows = res_csv[res_csv["time"] == tensor["time"]]
        assert rows.shape[0] == values.size
        npt.assert_allclose(
            rows["re"].to_numpy() + 1j * rows["im"].to_numpy(),
            values[rows["k"], rows["i"], rows["j"]],
            atol=1e-12,
        )


def test_structure_ill_conditioned():
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "structure",
            "--model",
            "qubit-dephasing",
            "--times",
            "2,4,50",
        ],
    )

    assert result.exit_code == 3


def test_structure_ill_conditioned_relaxed():
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "structure",
            "--model",
            "qubit-dephasing",
            "--times",
            "2,4,30",
            "--cond-max",
            "1e14",
        ],
    )

    assert result.exit_code == 0, result.exc_info


@pytest.mark.parametrize(
    "model", (pytest.param("qubit-dephasing"), pytest.param("qubit-dephasing-h3"))
)
def test_contract(model):
    result = runner.invoke(app, ["--no-logging", "contract", "--model", model])

    assert result.exit_code == 0, result.exc_info
    res = json.loads(result.stdout)
    assert res["model"] == model
    assert res["classification"]["label"] == "e2"
    assert res["classification"]["killing_signature"] == [0, 1, 2]
    assert res["expected_contraction"] == "e2"
    assert res["image_algebra_is_abelian"] is True
    assert res["limit_report"]["converged"] is True


@pytest.mark.parametrize(
    "model, exp_label",
    (
        pytest.param("qubit-dephasing", "e2", id="qubit-dephasing"),
        pytest.param("damped-oscillator", "abelian", id="damped-oscillator"),
        pytest.param("qubit-dephasing-h1", "heisenberg", id="qubit-dephasing-h1"),
        pytest.param("phase-damped-oscillator", "iso11", id="phase-damped-oscillator"),
    ),
)
def test_contract_default_schedule(model, exp_label):
    result = runner.invoke(app, ["--no-logging", "contract", "--model", model])

    assert result.exit_code == 0, result.exc_info
    res = json.loads(result.stdout)
    assert res["limit_report"]["converged"] is True
    assert res["classification"]["label"] == exp_label
    assert res["expected_contraction"] == exp_label


def test_contract_qubit_dephasing_h1_schedule_reaches_long_times():
    result = runner.invoke(
        app, ["--no-logging", "contract", "--model", "qubit-dephasing-h1"]
    )

    assert result.exit_code == 0, result.exc_info
    res = json.loads(result.stdout)
    # the underdamped σ2, σ3 block needs γt well beyond 16 to settle
    assert res["limit_report"]["times_used"][-1] == pytest.approx(24.0)
    # only [σ2, σ3] = 2i σ1 survives, but σ1 itself decays
    assert res["image_algebra_is_abelian"] is True


def test_contract_csv():
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "contract",
            "--model",
            "qubit-dephasing",
            "--times",
            QUBIT_TIMES,
            "--format",
            "csv",
        ],
    )

    assert result.exit_code == 0, result.exc_info
    res = pd.read_csv(io.StringIO(result.stdout))
    assert res.shape[0] == 1
    assert res["label"].iloc[0] == "e2"
    assert res["center_dim"].iloc[0] == 0
    assert res["derived_dim"].iloc[0] == 2


def test_contract_spec_file(test_data_dir):
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "contract",
            "--spec",
            str(test_data_dir / "specs" / "qubit-dephasing.json"),
            "--times",
            QUBIT_TIMES,
        ],
    )

    assert result.exit_code == 0, result.exc_info
    res = json.loads(result.stdout)
    assert res["classification"]["label"] == "e2"
    assert res["expected_contraction"] is None


def test_contract_spec_without_basis(test_data_dir):
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "contract",
            "--spec",
            str(test_data_dir / "specs" / "no-basis.json"),
            "--times",
            QUBIT_TIMES,
        ],
    )

    assert result.exit_code == 1


def test_contract_with_basis_file(test_data_dir):
    result = runner.invoke(
        app,
        [
            "--no-logging",
            "contract",
            "--model",
            "qubit-dephasing",
            "--basis",
            str(test_data_dir / "bases" / "pauli-rotated.json"),
            "--times",
            QUBIT_TIMES,
        ],
    )

    assert result.exit_code == 0, result.exc_info
    assert json.loads(result.stdout)["classification"]["label"] == "e2"
