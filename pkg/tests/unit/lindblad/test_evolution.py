"""
Tests of Heisenberg-picture evolution of observables
"""

from __future__ import annotations

import math

import numpy as np
import numpy.testing as npt
import pytest

from dissipative_observables.exceptions import DimensionError, ScheduleError
from dissipative_observables.lindblad.evolution import (
    ObservableEvolution,
    check_evolution_times,
    evolve_observable,
)


@pytest.mark.parametrize(
    "times, error_msg",
    (
        pytest.param([], "at least one time required", id="empty"),
        pytest.param([-1.0, 1.0], "finite and non-negative", id="negative"),
        pytest.param([0.0, math.nan], "finite and non-negative", id="nan"),
        pytest.param([1.0, 1.0], "strictly increasing", id="repeated"),
        pytest.param([2.0, 1.0], "strictly increasing", id="decreasing"),
    ),
)
def test_check_evolution_times(times, error_msg):
    with pytest.raises(ScheduleError, match=error_msg):
        check_evolution_times(times)


def test_evolve_qubit_dephasing(qubit_dephasing):
    sigma1 = qubit_dephasing.canonical_basis.element("sigma1")
    times = (0.0, 0.1, 0.5, 1.0, 2.0, 5.0)

    res = evolve_observable(qubit_dephasing.generator_adjoint(), sigma1, times)

    for t, value in zip(res.times, res.values):
        npt.assert_allclose(value, math.exp(-t) * sigma1, atol=1e-10)

    npt.assert_allclose(
        res.hs_norms, [math.sqrt(2) * math.exp(-t) for t in times], rtol=1e-12
    )


def test_evolve_at_zero_is_unchanged(qubit_dephasing):
    sigma2 = qubit_dephasing.canonical_basis.element("sigma2")

    res = evolve_observable(qubit_dephasing.generator_adjoint(), sigma2, [0.0])

    npt.assert_equal(res.values[0], sigma2)


def test_evolve_dimension_mismatch(qubit_dephasing):
    with pytest.raises(DimensionError):
        evolve_observable(qubit_dephasing.generator_adjoint(), np.eye(3), [1.0])


def test_evolution_exports(qubit_dephasing):
    sigma1 = qubit_dephasing.canonical_basis.element("sigma1")
    res = evolve_observable(qubit_dephasing.generator_adjoint(), sigma1, [0.0, 1.0])

    raw = res.to_json_dict()
    assert raw["times"] == [0.0, 1.0]
    assert raw["values"][0][0][1] == [1.0, 0.0]
    assert raw["values"][1][0][1][0] == pytest.approx(math.exp(-1))

    frame = res.to_frame()
    assert list(frame.columns) == ["time", "row", "col", "re", "im"]
    assert frame.shape == (8, 5)
    row = frame[(frame["time"] == 1.0) & (frame["row"] == 1) & (frame["col"] == 0)]
    assert row["re"].iloc[0] == pytest.approx(math.exp(-1))


def test_evolution_value_count_is_checked():
    with pytest.raises(ValueError, match="2 times but 1 values"):
        ObservableEvolution(observable=np.eye(2), times=[0.0, 1.0], values=[np.eye(2)])
