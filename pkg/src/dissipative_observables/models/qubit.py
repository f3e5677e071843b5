"""
Qubit undergoing phase damping, optionally with a Hamiltonian
"""

from __future__ import annotations

from enum import Enum
from typing import Callable

import numpy as np
import numpy.typing as npt
import scipy.linalg

from dissipative_observables.contraction.classification import LieAlgebraLabel
from dissipative_observables.exceptions import SpecError
from dissipative_observables.lindblad.spec import LindbladSpec
from dissipative_observables.lindblad.superoperator import Superoperator
from dissipative_observables.models.instance import (
    AdjointOracle,
    ModelInstance,
    diagonal_superoperator,
)
from dissipative_observables.operators.bases import pauli_basis
from dissipative_observables.operators.core import Operator

QUBIT_BASIS_LABELS: tuple[str, ...] = ("sigma1", "sigma2", "sigma3")
"""Labels of the canonical qubit basis"""


class QubitHamiltonianAxis(str, Enum):
    """
    Axis along which the qubit Hamiltonian H = Ω σ_axis points
    """

    x3 = "x3"
    x1 = "x1"


def _check_rate(gamma: float) -> None:
    if not gamma > 0:
        msg = f"gamma must be positive. Received {gamma=}"
        raise SpecError(msg)


def _pauli() -> dict[str, Operator]:
    basis = pauli_basis()

    return dict(zip(basis.labels, basis.elements))


def dephasing_superoperator(gamma: float) -> Superoperator:
    """
    Phase damping generator written out entrywise

    L|m><n| = -(γ/2)(1 - s_m s_n)|m><n| with s = (1, -1),
    i.e. coherences decay at rate γ and populations are untouched.
    """
    signs = np.array([1.0, -1.0])
    rates = -(gamma / 2) * (1 - np.outer(signs, signs))

    return diagonal_superoperator(2, rates.astype(np.complex128))


def _commutator_superoperator(hamiltonian: Operator) -> Superoperator:
    identity = np.eye(2, dtype=np.complex128)

    return Superoperator(
        dim=2,
        matrix=-1j
        * (np.kron(identity, hamiltonian) - np.kron(hamiltonian.T, identity)),
    )


def _qubit_spec(gamma: float, hamiltonian: Operator) -> LindbladSpec:
    # L rho = (γ/2)(σ3 rho σ3 - rho)
    return LindbladSpec.from_jumps(
        hamiltonian=hamiltonian, jumps=[(_pauli()["sigma3"], gamma / 2)]
    )


def _decaying(
    observable: Operator, gamma: float
) -> Callable[[float], npt.NDArray[np.complex128]]:
    return lambda t: np.exp(-gamma * t) * observable


def qubit_phase_damping(gamma: float = 1.0) -> ModelInstance:
    """
    Qubit undergoing phase damping

    L rho = -(γ/2)(rho - σ3 rho σ3).
    σ0 and σ3 are fixed, σ1 and σ2 decay as e^{-γt}.
    The contraction of su(2) along this dynamics is e(2).

    Parameters
    ----------
    gamma
        Dephasing rate

    Returns
    -------
    :
        Model

    Raises
    ------
    SpecError
        `gamma` is not positive
    """
    _check_rate(gamma)
    pauli = _pauli()
    zero = np.zeros((2, 2), dtype=np.complex128)

    oracles = {
        "sigma0": AdjointOracle(
            pauli["sigma0"], lambda t: pauli["sigma0"], limit=pauli["sigma0"]
        ),
        "sigma1": AdjointOracle(
            pauli["sigma1"], _decaying(pauli["sigma1"], gamma), limit=zero
        ),
        "sigma2": AdjointOracle(
            pauli["sigma2"], _decaying(pauli["sigma2"], gamma), limit=zero
        ),
        "sigma3": AdjointOracle(
            pauli["sigma3"], lambda t: pauli["sigma3"], limit=pauli["sigma3"]
        ),
    }

    return ModelInstance(
        name="qubit-dephasing",
        spec=_qubit_spec(gamma, zero),
        canonical_basis=pauli_basis().select(QUBIT_BASIS_LABELS),
        oracles=oracles,
        direct_generator=dephasing_superoperator(gamma),
        expected_contraction=LieAlgebraLabel.e2,
        parameters={"gamma": gamma},
    )


def _x3_oracles(gamma: float, omega: float) -> dict[str, AdjointOracle]:
    pauli = _pauli()
    s1, s2, s3 = pauli["sigma1"], pauli["sigma2"], pauli["sigma3"]
    zero = np.zeros((2, 2), dtype=np.complex128)

    def evolve_sigma1(t: float) -> Operator:
        angle = 2 * omega * t
        return np.exp(-gamma * t) * (np.cos(angle) * s1 - np.sin(angle) * s2)

    def evolve_sigma2(t: float) -> Operator:
        angle = 2 * omega * t
        return np.exp(-gamma * t) * (np.sin(angle) * s1 + np.cos(angle) * s2)

    return {
        "sigma1": AdjointOracle(s1, evolve_sigma1, limit=zero),
        "sigma2": AdjointOracle(s2, evolve_sigma2, limit=zero),
        "sigma3": AdjointOracle(s3, lambda t: s3, limit=s3),
    }


def _x1_oracles(gamma: float, omega: float) -> dict[str, AdjointOracle]:
    pauli = _pauli()
    s1, s2, s3 = pauli["sigma1"], pauli["sigma2"], pauli["sigma3"]
    zero = np.zeros((2, 2), dtype=np.complex128)
    # action of L♯ on span{σ2, σ3}, columns are the images
    block = np.array([[-gamma, 2 * omega], [-2 * omega, 0.0]])

    def evolve(column: int) -> Callable[[float], Operator]:
        def inner(t: float) -> Operator:
            coefficients = scipy.linalg.expm(block * t)[:, column]
            return coefficients[0] * s2 + coefficients[1] * s3

        return inner

    return {
        "sigma1": AdjointOracle(s1, _decaying(s1, gamma), limit=zero),
        "sigma2": AdjointOracle(s2, evolve(0), limit=zero),
        "sigma3": AdjointOracle(s3, evolve(1), limit=zero),
    }


def qubit_with_hamiltonian(
    gamma: float = 1.0,
    omega: float = 1.0,
    axis: QubitHamiltonianAxis = QubitHamiltonianAxis.x3,
) -> ModelInstance:
    """
    Phase-damped qubit with a Hamiltonian H = Ω σ_axis

    With H = Ω σ3 the Hamiltonian commutes with the dissipation:
    σ1 and σ2 rotate into each other while decaying and the contraction is still e(2).

    With H = Ω σ1 every traceless observable decays,
    the asymptotic state is 1/2 and the observables surviving t → ∞ commute.
    The contracted bracket keeps [σ2, σ3]_t = 2iσ1 while all others vanish,
    which is the Heisenberg algebra.

    Parameters
    ----------
    gamma
        Dephasing rate

    omega
        Hamiltonian strength Ω

    axis
        Direction of the Hamiltonian

    Returns
    -------
    :
        Model

    Raises
    ------
    SpecError
        `gamma` is not positive
    """
    _check_rate(gamma)
    axis = QubitHamiltonianAxis(axis)
    pauli = _pauli()
    if axis == QubitHamiltonianAxis.x3:
        hamiltonian = omega * pauli["sigma3"]
        oracles = _x3_oracles(gamma, omega)
        expected = LieAlgebraLabel.e2
        name = "qubit-dephasing-h3"
    else:
        hamiltonian = omega * pauli["sigma1"]
        oracles = _x1_oracles(gamma, omega)
        expected = LieAlgebraLabel.heisenberg
        name = "qubit-dephasing-h1"

    oracles["sigma0"] = AdjointOracle(
        pauli["sigma0"], lambda t: pauli["sigma0"], limit=pauli["sigma0"]
    )
    direct = dephasing_superoperator(gamma).matrix + (
        _commutator_superoperator(hamiltonian).matrix
    )

    return ModelInstance(
        name=name,
        spec=_qubit_spec(gamma, hamiltonian),
        canonical_basis=pauli_basis().select(QUBIT_BASIS_LABELS),
        oracles=oracles,
        direct_generator=Superoperator(dim=2, matrix=direct),
        expected_contraction=expected,
        parameters={"gamma": gamma, "omega": omega, "axis": axis.value},
    )


def asymptotic_state(model: ModelInstance, rho: Operator) -> Operator:
    """
    Λ_∞(rho) for the qubit models, from the known weak limits of the Pauli matrices

    Uses Tr(Λ_∞(rho) σ_i) = Tr(rho Λ♯_∞(σ_i)).

    Raises
    ------
    KeyError
        The model does not know the limit of one of the Pauli matrices
    """
    pauli = _pauli()
    res = np.zeros((2, 2), dtype=np.complex128)
    for label, sigma in pauli.items():
        limit = model.oracles[label].limit
        if limit is None:
            msg = f"No known limit for {label}"
            raise KeyError(msg)

        res += np.trace(rho @ limit) * sigma / 2

    return res

