"""
Tests of reading and writing specifications, bases and operators
"""

from __future__ import annotations

import json

import numpy as np
import numpy.testing as npt
import pytest

from dissipative_observables.exceptions import SpecError
from dissipative_observables.io import (
    load_basis,
    load_lindblad_spec,
    load_operator,
    write_lindblad_spec,
)
from dissipative_observables.lindblad.spec import build_generator
from dissipative_observables.lindblad.superoperator import adjoint_generator
from dissipative_observables.operators.bases import pauli_basis


def test_load_qubit_dephasing(test_data_dir, qubit_dephasing):
    spec, basis = load_lindblad_spec(test_data_dir / "specs" / "qubit-dephasing.json")

    assert spec.dim == 2
    assert len(spec.jumps) == 1
    assert spec.jumps[0].rate == 0.5
    assert basis.labels == ("sigma1", "sigma2", "sigma3")
    npt.assert_allclose(
        adjoint_generator(build_generator(spec)).matrix,
        qubit_dephasing.generator_adjoint().matrix,
        atol=1e-14,
    )


def test_load_spec_without_basis(test_data_dir):
    spec, basis = load_lindblad_spec(test_data_dir / "specs" / "no-basis.json")

    assert basis is None
    npt.assert_allclose(spec.hamiltonian, np.diag([1.0, -1.0]))


def test_load_non_hermitian_hamiltonian(test_data_dir):
    with pytest.raises(SpecError, match="The Hamiltonian must be Hermitian"):
        load_lindblad_spec(test_data_dir / "specs" / "non-hermitian-hamiltonian.json")


@pytest.mark.parametrize(
    "raw, match",
    (
        pytest.param({"dim": 2}, "does not follow the specification schema", id="keys"),
        pytest.param(
            {"dim": 3, "hamiltonian": [[[0.0, 0.0]]], "jumps": []},
            "The Hamiltonian has shape \\(1, 1\\) but raw.dim=3",
            id="dim",
        ),
        pytest.param(
            {"dim": 1, "hamiltonian": [[[0.0, 0.0, 1.0]]], "jumps": []},
            "Could not read the matrices",
            id="triples",
        ),
        pytest.param(
            {
                "dim": 1,
                "hamiltonian": [[[0.0, 0.0]]],
                "jumps": [{"op": [[[1.0, 0.0]]], "rate": -1.0}],
            },
            "Rates must be non-negative",
            id="negative-rate",
        ),
    ),
)
def test_load_invalid_spec(tmp_path, raw, match):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(raw))

    with pytest.raises(SpecError, match=match):
        load_lindblad_spec(path)


def test_load_invalid_json(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text("{not json")

    with pytest.raises(SpecError, match="does not follow the specification schema"):
        load_lindblad_spec(path)


def test_write_then_load(tmp_path, qubit_dephasing):
    path = tmp_path / "written.json"

    write_lindblad_spec(
        qubit_dephasing.spec, path, canonical_basis=qubit_dephasing.canonical_basis
    )
    spec, basis = load_lindblad_spec(path)

    npt.assert_allclose(spec.hamiltonian, qubit_dephasing.spec.hamiltonian)
    npt.assert_allclose(spec.jumps[0].operator, qubit_dephasing.spec.jumps[0].operator)
    assert basis.labels == qubit_dephasing.canonical_basis.labels

    # writing is deterministic
    path_again = tmp_path / "written-again.json"
    write_lindblad_spec(spec, path_again, canonical_basis=basis)
    assert path_again.read_text() == path.read_text()


def test_load_basis(test_data_dir):
    res = load_basis(test_data_dir / "bases" / "pauli-rotated.json")

    pauli = pauli_basis()
    assert res.labels == ("x", "z", "y")
    npt.assert_allclose(res.element("y"), pauli.element("sigma2"))


def test_load_basis_invalid(tmp_path):
    path = tmp_path / "basis.json"
    path.write_text(json.dumps({"labels": ["a"]}))

    with pytest.raises(SpecError, match="does not follow the basis schema"):
        load_basis(path)


def test_load_operator(test_data_dir):
    res = load_operator(test_data_dir / "observables" / "sigma1.json")

    npt.assert_allclose(res, pauli_basis().element("sigma1"))


def test_load_operator_not_square(tmp_path):
    path = tmp_path / "op.json"
    path.write_text(json.dumps([[[1.0, 0.0], [0.0, 0.0]]]))

    with pytest.raises(SpecError, match="does not contain an operator"):
        load_operator(path)
