"""
Tests of the deformed product and its context
"""

from __future__ import annotations

import itertools

import numpy as np
import numpy.testing as npt
import pytest

from dissipative_observables.config import Tolerances
from dissipative_observables.deformed import (
    deformed_algebra_context,
    deformed_commutator,
    deformed_product,
    jacobi_residual,
    structure_constants,
)
from dissipative_observables.exceptions import DimensionError, IllConditionedError
from dissipative_observables.lindblad.superoperator import apply
from dissipative_observables.models import (
    build_model,
    pure_decoherence_d_level,
    qubit_phase_damping,
    qubit_with_hamiltonian,
)
from dissipative_observables.models.qubit import QubitHamiltonianAxis
from dissipative_observables.operators.bases import matrix_unit, matrix_unit_basis
from dissipative_observables.testing import random_operator


def test_context_dimension_mismatch(qubit_dephasing):
    with pytest.raises(DimensionError):
        deformed_algebra_context(
            qubit_dephasing.generator_adjoint(), matrix_unit_basis(3), 1.0
        )


def test_context_negative_time(qubit_dephasing):
    with pytest.raises(ValueError, match="time must be finite and non-negative"):
        deformed_algebra_context(
            qubit_dephasing.generator_adjoint(), qubit_dephasing.canonical_basis, -1.0
        )


def test_context_keeps_going_without_inverse(qubit_dephasing):
    ctx = deformed_algebra_context(
        qubit_dephasing.generator_adjoint(), qubit_dephasing.canonical_basis, 40.0
    )

    assert ctx.inverse is None
    assert ctx.condition_estimate == pytest.approx(np.exp(40.0), rel=1e-9)

    with pytest.raises(IllConditionedError):
        ctx.require_inverse()

    sigma1, sigma2, _ = qubit_dephasing.canonical_basis.elements
    with pytest.raises(IllConditionedError):
        deformed_product(ctx, sigma1, sigma2)

    with pytest.raises(IllConditionedError):
        deformed_commutator(ctx, sigma1, sigma2)


def test_product_at_zero_is_ordinary_product():
    model = qubit_with_hamiltonian(gamma=0.8, omega=0.6, axis=QubitHamiltonianAxis.x1)
    ctx = deformed_algebra_context(
        model.generator_adjoint(), model.canonical_basis, 0.0
    )
    a = random_operator(2, seed=11)
    b = random_operator(2, seed=12)

    npt.assert_allclose(deformed_product(ctx, a, b), a @ b, atol=1e-14)


def test_product_dimension_mismatch(qubit_dephasing):
    ctx = deformed_algebra_context(
        qubit_dephasing.generator_adjoint(), qubit_dephasing.canonical_basis, 1.0
    )

    with pytest.raises(DimensionError):
        deformed_product(ctx, np.eye(2), np.eye(3))


@pytest.mark.parametrize("t", (0.1, 0.5, 1.0, 2.0, 5.0))
def test_qubit_dephasing_product_closed_form(qubit_dephasing, t):
    ctx = deformed_algebra_context(
        qubit_dephasing.generator_adjoint(), qubit_dephasing.canonical_basis, t
    )
    sigma1, sigma2, sigma3 = qubit_dephasing.canonical_basis.elements

    npt.assert_allclose(
        deformed_product(ctx, sigma1, sigma2),
        1j * np.exp(-2 * t) * sigma3,
        atol=1e-12,
    )
    npt.assert_allclose(
        deformed_commutator(ctx, sigma1, sigma2),
        2j * np.exp(-2 * t) * sigma3,
        atol=1e-12,
    )
    # σ3 is untouched, so its products keep their ordinary form
    npt.assert_allclose(
        deformed_commutator(ctx, sigma2, sigma3), 2j * sigma1, atol=1e-10
    )


def test_commutator_is_product_difference():
    model = qubit_with_hamiltonian(gamma=1.3, omega=0.4, axis=QubitHamiltonianAxis.x1)
    ctx = deformed_algebra_context(
        model.generator_adjoint(), model.canonical_basis, 0.7
    )
    a = random_operator(2, seed=21)
    b = random_operator(2, seed=22)

    npt.assert_allclose(
        deformed_commutator(ctx, a, b),
        deformed_product(ctx, a, b) - deformed_product(ctx, b, a),
        atol=1e-10,
    )


@pytest.mark.parametrize(
    "model",
    (
        pytest.param(
            qubit_with_hamiltonian(omega=0.5, axis=QubitHamiltonianAxis.x1),
            id="qubit-h1",
        ),
        pytest.param(pure_decoherence_d_level(gammas=(0.4, 0.9)), id="d3"),
    ),
)
def test_product_is_associative(model):
    ctx = deformed_algebra_context(
        model.generator_adjoint(), model.canonical_basis, 0.5
    )
    a, b, c = (random_operator(model.dim, seed=seed) for seed in (31, 32, 33))

    npt.assert_allclose(
        deformed_product(ctx, deformed_product(ctx, a, b), c),
        deformed_product(ctx, a, deformed_product(ctx, b, c)),
        atol=1e-9,
    )


@pytest.mark.parametrize("t", (0.5, 1.0, 2.0))
def test_equal_rate_matrix_unit_products(t):
    model = pure_decoherence_d_level(gammas=(1.0, 1.0))
    decoherence = model.decoherence
    d = model.dim
    ctx = deformed_algebra_context(
        model.generator_adjoint(), model.canonical_basis, t
    )

    for m, n, k, l in itertools.product(range(d), repeat=4):  # noqa: E741
        res = deformed_product(ctx, matrix_unit(m, n, d), matrix_unit(k, l, d))
        exp = decoherence.deformed_matrix_unit_product(t, m, n, k, l)

        npt.assert_allclose(res, exp, atol=1e-10)

        if n == k:
            # all off-diagonal rates are equal, so only the δ factors survive
            coefficient = np.exp(-t * ((m != n) + (l != k) - (l != m)))
            npt.assert_allclose(res, coefficient * matrix_unit(m, l, d), atol=1e-10)
        else:
            npt.assert_allclose(res, 0.0, atol=1e-10)


def test_pure_decoherence_qubit_matches_phase_damping():
    t = 0.8
    qubit = qubit_phase_damping(gamma=1.0)
    d2 = pure_decoherence_d_level(gammas=(1.0,))

    ctx_qubit = deformed_algebra_context(
        qubit.generator_adjoint(), qubit.canonical_basis, t
    )
    ctx_d2 = deformed_algebra_context(d2.generator_adjoint(), d2.canonical_basis, t)
    a = random_operator(2, seed=41)
    b = random_operator(2, seed=42)

    npt.assert_allclose(
        deformed_product(ctx_qubit, a, b), deformed_product(ctx_d2, a, b), atol=1e-12
    )


REGISTERED_MODELS = (
    pytest.param("qubit-dephasing", {}, id="qubit-dephasing"),
    pytest.param("qubit-dephasing-h3", {}, id="qubit-dephasing-h3"),
    pytest.param("qubit-dephasing-h1", {}, id="qubit-dephasing-h1"),
    pytest.param("damped-oscillator", {"dim": 6}, id="damped-oscillator"),
    pytest.param("phase-damped-oscillator", {"dim": 6}, id="phase-damped"),
    pytest.param("discrete-position", {}, id="discrete-position"),
    pytest.param("pure-decoherence", {}, id="pure-decoherence"),
    pytest.param(
        "pure-decoherence", {"rates": [1.0, 2.0, 3.0]}, id="pure-decoherence-d4"
    ),
)


@pytest.mark.parametrize("t", (0.5, 1.0))
@pytest.mark.parametrize("name, overrides", REGISTERED_MODELS)
def test_propagator_is_isomorphism_onto_ordinary_product(name, overrides, t):
    model = build_model(name, **overrides)
    ctx = deformed_algebra_context(
        model.generator_adjoint(), model.canonical_basis, t
    )
    a = random_operator(model.dim, seed=51)
    b = random_operator(model.dim, seed=52)

    npt.assert_allclose(
        apply(ctx.forward, deformed_product(ctx, a, b)),
        apply(ctx.forward, a) @ apply(ctx.forward, b),
        atol=1e-8,
    )


@pytest.mark.parametrize("name, overrides", REGISTERED_MODELS)
def test_identity_is_unit_of_deformed_product(name, overrides):
    model = build_model(name, **overrides)
    ctx = deformed_algebra_context(
        model.generator_adjoint(), model.canonical_basis, 1.0
    )
    identity = np.eye(model.dim, dtype=np.complex128)
    a = random_operator(model.dim, seed=61)

    npt.assert_allclose(deformed_product(ctx, identity, a), a, atol=1e-9)
    npt.assert_allclose(deformed_product(ctx, a, identity), a, atol=1e-9)


@pytest.mark.parametrize("t", (0.5, 1.0))
@pytest.mark.parametrize("name, overrides", REGISTERED_MODELS)
def test_jacobi_identity_at_finite_times(name, overrides, t):
    model = build_model(name, **overrides)
    ctx = deformed_algebra_context(
        model.generator_adjoint(), model.canonical_basis, t
    )

    tensor = structure_constants(ctx)

    assert jacobi_residual(tensor) < Tolerances().tol_jacobi
