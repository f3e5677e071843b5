"""
Re-useable fixtures etc. for tests

See https://docs.pytest.org/en/7.1.x/reference/fixtures.html#conftest-py-sharing-fixtures-across-multiple-files
"""

from __future__ import annotations

from pathlib import Path

import pytest

from dissipative_observables.config import set_default_tolerances
from dissipative_observables.models import ModelInstance, qubit_phase_damping

TEST_DATA_DIR = (Path(__file__).parent / "test-data").absolute()


@pytest.fixture(autouse=True)
def reset_default_tolerances():
    # Tests which change the global defaults must not leak into other tests
    set_default_tolerances(None)
    yield
    set_default_tolerances(None)


@pytest.fixture
def test_data_dir() -> Path:
    return TEST_DATA_DIR


@pytest.fixture
def qubit_dephasing() -> ModelInstance:
    return qubit_phase_damping(gamma=1.0)
