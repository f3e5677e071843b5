"""
Tests of the time schedules used for limit extraction
"""

from __future__ import annotations

import math
import re

import numpy as np
import pytest

from dissipative_observables.config import Tolerances
from dissipative_observables.deformed import (
    default_schedule,
    geometric_schedule,
    limit_schedule,
    validate_schedule,
)
from dissipative_observables.deformed.schedule import (
    reference_rate,
    slowest_decay_rate,
)
from dissipative_observables.exceptions import ScheduleError
from dissipative_observables.lindblad.superoperator import Superoperator
from dissipative_observables.models import qubit_with_hamiltonian
from dissipative_observables.models.qubit import QubitHamiltonianAxis
from dissipative_observables.operators.bases import pauli_basis


@pytest.mark.parametrize(
    "schedule, reason",
    (
        pytest.param([1.0, 2.0], "at least 3 times required", id="too-short"),
        pytest.param([1.0, math.inf, 3.0], "all times must be finite", id="infinite"),
        pytest.param([-1.0, 1.0, 2.0], "all times must be non-negative", id="negative"),
        pytest.param(
            [1.0, 1.0, 2.0], "times must be strictly increasing", id="repeated"
        ),
        pytest.param(
            [1.0, 3.0, 2.0], "times must be strictly increasing", id="decreasing"
        ),
    ),
)
def test_validate_schedule_errors(schedule, reason):
    with pytest.raises(ScheduleError, match=re.escape(f"({reason})")):
        validate_schedule(schedule)


def test_validate_schedule_returns_floats():
    res = validate_schedule(np.array([0, 1, 2]))

    assert res == (0.0, 1.0, 2.0)
    assert all(isinstance(v, float) for v in res)


def test_geometric_schedule():
    res = geometric_schedule(1.0, 100.0, 3)

    assert res == pytest.approx((1.0, 10.0, 100.0))


@pytest.mark.parametrize(
    "t_min, t_max, count",
    (
        pytest.param(0.0, 10.0, 4, id="zero-start"),
        pytest.param(5.0, 1.0, 4, id="reversed"),
        pytest.param(1.0, 10.0, 2, id="too-few"),
    ),
)
def test_geometric_schedule_errors(t_min, t_max, count):
    with pytest.raises(ScheduleError, match="geometric schedules need"):
        geometric_schedule(t_min, t_max, count)


def test_reference_rate_qubit_dephasing(qubit_dephasing):
    res = reference_rate(
        qubit_dephasing.generator_adjoint(), qubit_dephasing.canonical_basis
    )

    assert res == pytest.approx(1.0)


def test_default_schedule_qubit_dephasing(qubit_dephasing):
    res = default_schedule(
        qubit_dephasing.generator_adjoint(), qubit_dephasing.canonical_basis
    )

    assert res == pytest.approx(tuple(float(v) for v in range(2, 26, 2)))


def test_default_schedule_underdamped_block():
    # σ2 and σ3 oscillate while decaying at half the rate of σ1
    model = qubit_with_hamiltonian(gamma=1.0, omega=1.0, axis=QubitHamiltonianAxis.x1)

    res = default_schedule(model.generator_adjoint(), model.canonical_basis)

    assert res == pytest.approx(tuple(float(v) for v in range(2, 26, 2)))


def test_default_schedule_explicit_rate(qubit_dephasing):
    res = default_schedule(
        qubit_dephasing.generator_adjoint(),
        qubit_dephasing.canonical_basis,
        rate_ref=2.0,
    )

    assert res == pytest.approx(tuple(float(v) for v in range(1, 13)))


def test_default_schedule_stops_at_conditioning_ceiling(qubit_dephasing):
    # e^12 is below the ceiling, e^14 is not
    res = default_schedule(
        qubit_dephasing.generator_adjoint(),
        qubit_dephasing.canonical_basis,
        tolerances=Tolerances(cond_max=1e6),
    )

    assert res == pytest.approx((2.0, 4.0, 6.0, 8.0, 10.0, 12.0))


def test_default_schedule_keeps_minimum_steps(qubit_dephasing):
    res = default_schedule(
        qubit_dephasing.generator_adjoint(),
        qubit_dephasing.canonical_basis,
        tolerances=Tolerances(cond_max=10.0),
    )

    assert res == pytest.approx((2.0, 4.0, 6.0, 8.0, 10.0))


def test_default_schedule_needs_dissipation():
    generator_adjoint = Superoperator(dim=2, matrix=np.zeros((4, 4)))

    with pytest.raises(ScheduleError, match="cannot infer a time scale"):
        default_schedule(generator_adjoint, pauli_basis())


def test_limit_schedule_scales_with_slowest_rate(qubit_dephasing):
    res = limit_schedule(qubit_dephasing.generator_adjoint())

    assert res == pytest.approx(tuple(float(v) for v in range(2, 26, 2)))


def test_limit_schedule_follows_slowest_decay():
    # σ2 and σ3 decay at half the rate of σ1
    model = qubit_with_hamiltonian(gamma=1.0, omega=1.0, axis=QubitHamiltonianAxis.x1)
    generator_adjoint = model.generator_adjoint()

    assert slowest_decay_rate(generator_adjoint) == pytest.approx(0.5)
    assert limit_schedule(generator_adjoint) == pytest.approx(
        tuple(float(v) for v in range(4, 52, 4))
    )


def test_slowest_decay_rate_without_decay():
    generator_adjoint = Superoperator(dim=2, matrix=np.zeros((4, 4)))

    assert slowest_decay_rate(generator_adjoint) == 1.0
