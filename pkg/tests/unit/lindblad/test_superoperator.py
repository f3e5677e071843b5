"""
Tests of superoperators and propagators
"""

from __future__ import annotations

import math
import re

import numpy as np
import numpy.testing as npt
import pytest

from dissipative_observables.config import Tolerances
from dissipative_observables.exceptions import DimensionError, IllConditionedError
from dissipative_observables.lindblad.spec import build_generator
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    adjoint_generator,
    apply,
    compose,
    identity_superoperator,
    inverse_propagator,
    log_condition_estimate,
    propagator,
    unvec,
    vec,
)
from dissipative_observables.models import (
    build_model,
    damped_oscillator,
    qubit_phase_damping,
    qubit_with_hamiltonian,
)
from dissipative_observables.models.qubit import QubitHamiltonianAxis
from dissipative_observables.operators.core import hs_inner
from dissipative_observables.testing import (
    assert_superoperators_close,
    random_hermitian,
    random_operator,
)


def test_vec_is_column_stacking():
    a = random_operator(3, seed=1)
    rho = random_operator(3, seed=2)
    b = random_operator(3, seed=3)

    npt.assert_allclose(vec(a @ rho @ b), np.kron(b.T, a) @ vec(rho), atol=1e-12)
    npt.assert_equal(unvec(vec(rho), 3), rho)


def test_superoperator_shape_is_checked():
    with pytest.raises(ValueError, match="matrix must have shape"):
        Superoperator(dim=2, matrix=np.eye(3))


def test_compose_dimension_mismatch():
    with pytest.raises(DimensionError):
        compose(identity_superoperator(2), identity_superoperator(3))


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply(identity_superoperator(2), np.eye(3))


def test_adjoint_is_hilbert_schmidt_adjoint():
    generator = damped_oscillator(gamma=0.7, n_max=4, omega=0.3).generator()
    generator_adjoint = adjoint_generator(generator)
    a = random_operator(5, seed=4)
    b = random_operator(5, seed=5)

    assert hs_inner(apply(generator, a), b) == pytest.approx(
        hs_inner(a, apply(generator_adjoint, b)), abs=1e-12
    )


def test_propagator_at_zero_is_identity():
    generator = damped_oscillator(n_max=4).generator()

    assert_superoperators_close(
        propagator(generator, 0.0), identity_superoperator(5), atol=0.0
    )


@pytest.mark.parametrize(
    "generator",
    (
        pytest.param(qubit_phase_damping(0.8).generator(), id="diagonal"),
        pytest.param(
            qubit_with_hamiltonian(0.8, 1.3, QubitHamiltonianAxis.x1).generator(),
            id="non_diagonal",
        ),
        pytest.param(damped_oscillator(0.5, n_max=5).generator(), id="non_normal"),
    ),
)
def test_semigroup_law(generator):
    t, s = 0.4, 1.1

    assert_superoperators_close(
        propagator(generator, t + s),
        propagator(generator, t) @ propagator(generator, s),
        atol=1e-10,
    )
    assert_superoperators_close(
        propagator(generator, t) @ propagator(generator, -t),
        identity_superoperator(generator.dim),
        atol=1e-10,
    )


def test_propagator_needs_finite_time():
    with pytest.raises(ValueError, match="t must be finite"):
        propagator(identity_superoperator(2), math.inf)


def test_diagonal_condition_estimate_is_exact():
    generator = qubit_phase_damping(2.0).generator()

    # coherences decay at rate 2, populations do not
    assert log_condition_estimate(generator, 3.0) == pytest.approx(6.0)


def test_inverse_propagator():
    generator = qubit_phase_damping(1.0).generator()

    inverse, condition_estimate = inverse_propagator(generator, 2.0)

    assert condition_estimate == pytest.approx(math.exp(2.0))
    assert_superoperators_close(
        inverse @ propagator(generator, 2.0), identity_superoperator(2), atol=1e-12
    )


def test_inverse_propagator_refuses_ill_conditioned():
    generator = qubit_phase_damping(1.0).generator()

    with pytest.raises(IllConditionedError, match=re.escape("time=30.0")):
        inverse_propagator(generator, 30.0)

    # with a relaxed threshold, we invert
    inverse_propagator(generator, 30.0, tolerances=Tolerances(cond_max=math.inf))


def test_ill_conditioned_error_attributes():
    generator = qubit_phase_damping(1.0).generator()

    with pytest.raises(IllConditionedError) as exc_info:
        inverse_propagator(generator, 50.0)

    assert exc_info.value.time == 50.0
    assert exc_info.value.condition_estimate == pytest.approx(math.exp(50.0))


def test_generator_matches_direct_formula(qubit_dephasing):
    assert_superoperators_close(
        build_generator(qubit_dephasing.spec),
        qubit_dephasing.direct_generator,
        atol=1e-14,
    )


@pytest.mark.parametrize("t", (0.3, 2.0))
@pytest.mark.parametrize(
    "name, overrides",
    (
        pytest.param("qubit-dephasing", {}, id="qubit-dephasing"),
        pytest.param("qubit-dephasing-h3", {}, id="qubit-dephasing-h3"),
        pytest.param("qubit-dephasing-h1", {}, id="qubit-dephasing-h1"),
        pytest.param("damped-oscillator", {"dim": 6}, id="damped-oscillator"),
        pytest.param("phase-damped-oscillator", {"dim": 6}, id="phase-damped"),
        pytest.param("discrete-position", {}, id="discrete-position"),
        pytest.param("pure-decoherence", {"rates": [1.0, 2.0, 3.0]}, id="d4"),
    ),
)
def test_adjoint_propagator_preserves_hermiticity(name, overrides, t):
    model = build_model(name, **overrides)
    forward = propagator(model.generator_adjoint(), t)

    for seed in (71, 72, 73):
        observable = random_hermitian(model.dim, seed=seed)
        res = apply(forward, observable)

        npt.assert_allclose(res, res.conj().T, atol=1e-12)
