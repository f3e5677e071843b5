"""
Tests of generator specifications
"""

from __future__ import annotations

import numpy as np
import pytest

from dissipative_observables.exceptions import SpecError
from dissipative_observables.lindblad.spec import (
    JumpOperator,
    LindbladSpec,
    adjoint_generator_from_spec,
    build_generator,
)
from dissipative_observables.lindblad.superoperator import adjoint_generator
from dissipative_observables.testing import (
    assert_superoperators_close,
    random_hermitian,
    random_operator,
    random_rates,
)


def test_non_hermitian_hamiltonian():
    with pytest.raises(SpecError, match="The Hamiltonian must be Hermitian"):
        LindbladSpec(hamiltonian=np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_negative_rate():
    with pytest.raises(SpecError, match="Rates must be non-negative"):
        LindbladSpec.from_jumps(np.zeros((2, 2)), [(np.eye(2), -1.0)])


def test_jump_shape_mismatch():
    with pytest.raises(SpecError, match="Jump 0 has shape"):
        LindbladSpec.from_jumps(np.zeros((2, 2)), [(np.eye(3), 1.0)])


def test_properties():
    spec = LindbladSpec.from_jumps(
        np.zeros((3, 3)), [(np.eye(3), 0.5), (np.diag([1.0, 2.0, 3.0]), 2.0)]
    )

    assert spec.dim == 3
    assert spec.max_rate == 2.0
    assert isinstance(spec.jumps[0], JumpOperator)
    assert LindbladSpec(hamiltonian=np.eye(2)).max_rate == 0.0


@pytest.mark.parametrize("seed", (1, 2, 3))
def test_adjoint_from_spec_matches_conjugate_transpose(seed):
    spec = LindbladSpec.from_jumps(
        random_hermitian(3, seed=seed),
        [
            (random_operator(3, seed=seed + 10), rate)
            for rate in random_rates(2, seed=seed)
        ],
    )

    assert_superoperators_close(
        adjoint_generator_from_spec(spec),
        adjoint_generator(build_generator(spec)),
        atol=1e-12,
    )


def test_generator_is_trace_preserving():
    spec = LindbladSpec.from_jumps(
        random_hermitian(3, seed=7), [(random_operator(3, seed=8), 1.3)]
    )
    generator = build_generator(spec)

    # Tr(L rho) = 0 for all rho, i.e. vec(1)† L = 0
    identity_vec = np.eye(3).ravel(order="F")
    np.testing.assert_allclose(identity_vec @ generator.matrix, 0.0, atol=1e-12)
