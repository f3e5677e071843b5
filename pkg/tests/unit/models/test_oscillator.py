"""
Tests of the truncated oscillator models
"""

from __future__ import annotations

import numpy as np
import numpy.testing as npt
import pytest

from dissipative_observables.contraction import LieAlgebraLabel
from dissipative_observables.exceptions import SpecError
from dissipative_observables.models import damped_oscillator, phase_damped_oscillator
from dissipative_observables.models.oscillator import N_MAX_MIN
from dissipative_observables.operators.core import max_abs
from dissipative_observables.validation.model import oracle_deviation


@pytest.mark.parametrize(
    "factory", (pytest.param(damped_oscillator), pytest.param(phase_damped_oscillator))
)
@pytest.mark.parametrize("omega", (0.0, 0.7))
def test_oracles_match_propagator(factory, omega):
    model = factory(gamma=0.8, n_max=8, omega=omega)
    generator_adjoint = model.generator_adjoint()
    interior = model.canonical_basis.interior

    assert set(model.oracles) == {"a", "a_dag", "N", "1"}
    for oracle in model.oracles.values():
        for t in (0.5, 1.0, 3.0):
            assert (
                oracle_deviation(generator_adjoint, oracle, t, interior=interior)
                < 1e-9
            )


@pytest.mark.parametrize(
    "factory", (pytest.param(damped_oscillator), pytest.param(phase_damped_oscillator))
)
def test_generator_matches_closed_form(factory):
    model = factory(gamma=1.3, n_max=6, omega=0.4)

    assert (
        max_abs(model.generator().matrix - model.direct_generator.matrix) < 1e-12
    )


def test_damped_oscillator_metadata():
    model = damped_oscillator(n_max=10, n_guard=3)

    assert model.dim == 11
    assert model.canonical_basis.interior == 8
    assert model.expected_contraction == LieAlgebraLabel.abelian
    npt.assert_allclose(model.oracles["N"].limit, 0.0)


def test_phase_damped_oscillator_conserves_number():
    model = phase_damped_oscillator(n_max=6)

    assert model.expected_contraction == LieAlgebraLabel.iso11
    number = model.oracles["N"].observable
    npt.assert_allclose(model.oracles["N"].action(5.0), number)
    npt.assert_allclose(model.oracles["N"].limit, number)


def test_phase_damped_oscillator_self_dual():
    model = phase_damped_oscillator(gamma=0.9, n_max=5)

    npt.assert_allclose(
        model.generator_adjoint().matrix, model.generator().matrix, atol=1e-12
    )


@pytest.mark.parametrize(
    "kwargs, match",
    (
        pytest.param({"gamma": 0.0}, "gamma must be positive", id="zero-gamma"),
        pytest.param(
            {"n_max": N_MAX_MIN - 1}, "n_max must be at least 4", id="small-n-max"
        ),
        pytest.param({"n_max": 6, "n_guard": 6}, "n_guard must be in", id="guard"),
        pytest.param({"n_guard": -1}, "n_guard must be in", id="negative-guard"),
    ),
)
@pytest.mark.parametrize(
    "factory", (pytest.param(damped_oscillator), pytest.param(phase_damped_oscillator))
)
def test_invalid_parameters(factory, kwargs, match):
    with pytest.raises(SpecError, match=match):
        factory(**kwargs)


def test_annihilation_decay_rate():
    model = damped_oscillator(gamma=2.0, n_max=5, omega=1.0)
    a = model.oracles["a"].observable

    npt.assert_allclose(
        model.oracles["a"].action(0.5), np.exp(-(1.0 + 1.0j) * 0.5) * a, atol=1e-14
    )
