"""
Harmonic oscillator undergoing energy or phase damping, on a truncated Fock space
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from dissipative_observables.contraction.classification import LieAlgebraLabel
from dissipative_observables.exceptions import SpecError
from dissipative_observables.lindblad.spec import LindbladSpec
from dissipative_observables.lindblad.superoperator import Superoperator
from dissipative_observables.models.instance import (
    AdjointOracle,
    ModelInstance,
    diagonal_superoperator,
)
from dissipative_observables.operators.core import Operator
from dissipative_observables.operators.fock import ladder_operators, oscillator_basis

N_MAX_MIN: int = 4
"""Smallest truncation we accept"""

DEFAULT_N_MAX: int = 20
"""Default truncation"""


def _check_parameters(gamma: float, n_max: int, n_guard: int) -> None:
    if not gamma > 0:
        msg = f"gamma must be positive. Received {gamma=}"
        raise SpecError(msg)

    if n_max < N_MAX_MIN:
        msg = f"n_max must be at least {N_MAX_MIN}. Received {n_max=}"
        raise SpecError(msg)

    if not 0 <= n_guard < n_max:
        msg = f"n_guard must be in [0, n_max). Received {n_guard=}"
        raise SpecError(msg)


def _scaled(observable: Operator, rate: complex) -> Callable[[float], Operator]:
    return lambda t: np.exp(rate * t) * observable


def _ladder_oracles(
    gamma: float, omega: float, number_rate: float, n_max: int
) -> dict[str, AdjointOracle]:
    annihilation, creation, number = ladder_operators(n_max)
    identity = np.eye(n_max + 1, dtype=np.complex128)
    zero = np.zeros_like(identity)

    return {
        "a": AdjointOracle(
            annihilation, _scaled(annihilation, -(gamma / 2 + 1j * omega)), limit=zero
        ),
        "a_dag": AdjointOracle(
            creation, _scaled(creation, -(gamma / 2 - 1j * omega)), limit=zero
        ),
        "N": AdjointOracle(
            number,
            _scaled(number, -number_rate),
            limit=number if number_rate == 0 else zero,
        ),
        "1": AdjointOracle(identity, lambda t: identity, limit=identity),
    }


def damped_oscillator(
    gamma: float = 1.0,
    n_max: int = DEFAULT_N_MAX,
    n_guard: int = 2,
    omega: float = 0.0,
) -> ModelInstance:
    """
    Harmonic oscillator undergoing energy damping

    L rho = -iω[N, rho] - (γ/2)({a†a, rho} - 2 a rho a†).
    Λ♯_t(a) = e^{-(γ/2 + iω)t} a, Λ♯_t(N) = e^{-γt} N,
    so every commutator of the oscillator algebra contracts to zero.

    Parameters
    ----------
    gamma
        Damping rate

    n_max
        Highest Fock level kept

    n_guard
        Number of top levels excluded from comparisons

    omega
        Oscillator frequency of the Hamiltonian H = ω N

    Returns
    -------
    :
        Model

    Raises
    ------
    SpecError
        A parameter is out of range
    """
    _check_parameters(gamma, n_max, n_guard)
    annihilation, creation, number = ladder_operators(n_max)
    identity = np.eye(n_max + 1, dtype=np.complex128)

    direct = (
        gamma * np.kron(annihilation.conj(), annihilation)
        - (gamma / 2 + 1j * omega) * np.kron(identity, number)
        - (gamma / 2 - 1j * omega) * np.kron(number.T, identity)
    )

    return ModelInstance(
        name="damped-oscillator",
        spec=LindbladSpec.from_jumps(
            hamiltonian=omega * number, jumps=[(annihilation, gamma)]
        ),
        canonical_basis=oscillator_basis(n_max, n_guard),
        oracles=_ladder_oracles(gamma, omega, number_rate=gamma, n_max=n_max),
        direct_generator=Superoperator(dim=n_max + 1, matrix=direct),
        expected_contraction=LieAlgebraLabel.abelian,
        parameters={"gamma": gamma, "n_max": n_max, "n_guard": n_guard, "omega": omega},
    )


def phase_damped_oscillator(
    gamma: float = 1.0,
    n_max: int = DEFAULT_N_MAX,
    n_guard: int = 2,
    omega: float = 0.0,
) -> ModelInstance:
    """
    Harmonic oscillator undergoing phase damping

    L rho = -iω[N, rho] - (γ/2)({(a†a)², rho} - 2 a†a rho a†a),
    so L|m><n| = (-(γ/2)(m - n)² - iω(m - n))|m><n|.
    For ω = 0 the generator is self-dual (L♯ = L).
    Λ♯_t(a) = e^{-(γ/2 + iω)t} a and N is conserved,
    so [a, a†] contracts to zero while [a, N] = a survives:
    modulo the central identity this is iso(1, 1).

    Parameters
    ----------
    gamma
        Damping rate

    n_max
        Highest Fock level kept

    n_guard
        Number of top levels excluded from comparisons

    omega
        Oscillator frequency of the Hamiltonian H = ω N

    Returns
    -------
    :
        Model

    Raises
    ------
    SpecError
        A parameter is out of range
    """
    _check_parameters(gamma, n_max, n_guard)
    _, _, number = ladder_operators(n_max)
    levels = np.arange(n_max + 1)
    differences = np.subtract.outer(levels, levels)

    return ModelInstance(
        name="phase-damped-oscillator",
        spec=LindbladSpec.from_jumps(
            hamiltonian=omega * number, jumps=[(number, gamma)]
        ),
        canonical_basis=oscillator_basis(n_max, n_guard),
        oracles=_ladder_oracles(gamma, omega, number_rate=0.0, n_max=n_max),
        direct_generator=diagonal_superoperator(
            n_max + 1, -(gamma / 2) * differences**2 - 1j * omega * differences
        ),
        expected_contraction=LieAlgebraLabel.iso11,
        parameters={"gamma": gamma, "n_max": n_max, "n_guard": n_guard, "omega": omega},
    )
