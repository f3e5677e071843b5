"""
Pure decoherence of a d-level system

L rho = -(1/d) sum_{k=1}^{d-1} γ_k (rho - U_k rho U_k†),
with U_k = sum_l λ^{-kl} P_l and λ = exp(2πi/d).
Every matrix unit is an eigenvector of L, so the dynamics is described
completely by the decoherence matrix c_mn(t), Λ_t(rho) = sum_mn c_mn(t) P_m rho P_n.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Callable, Optional

import numpy as np
import numpy.typing as npt
from attrs import field, frozen

from dissipative_observables.exceptions import SpecError
from dissipative_observables.lindblad.spec import LindbladSpec
from dissipative_observables.models.discrete_position import check_hamiltonian_diagonal
from dissipative_observables.models.instance import (
    AdjointOracle,
    ModelInstance,
    diagonal_superoperator,
)
from dissipative_observables.operators.bases import matrix_unit, matrix_unit_basis
from dissipative_observables.operators.core import Operator

ZERO_RATE_ATOL: float = 1e-14
"""Rates γ_mn below this are treated as zero when deciding on weak limits"""


def decoherence_unitaries(d: int) -> tuple[Operator, ...]:
    """
    The unitaries U_k = sum_l λ^{-kl} P_l, k = 0, ..., d - 1

    U_0 is the identity and Tr U_k = 0 for k ≥ 1.
    """
    lam = np.exp(2j * np.pi / d)
    levels = np.arange(d)

    return tuple(np.diag(lam ** (-k * levels)) for k in range(d))


def _as_rates(values: Sequence[float]) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


@frozen
class DecoherenceMatrix:
    """
    Decoherence matrix c_mn(t) = exp(-(iω_mn + γ_mn) t)

    c_mn(t) is the factor picked up by |m><n| under Λ_t.
    Under the adjoint, Λ♯_t|m><n| = c_nm(t)|m><n|.
    """

    d: int
    """Hilbert space dimension"""

    gammas: tuple[float, ...] = field(converter=_as_rates)
    """γ_1, ..., γ_{d-1}"""

    hamiltonian_diagonal: tuple[float, ...] = field(converter=_as_rates)
    """h_m of an optional Hamiltonian H = sum_m h_m P_m"""

    @gammas.validator
    def _gammas_validator(self, attribute: object, value: tuple[float, ...]) -> None:
        if len(value) != self.d - 1:
            msg = f"{self.d - 1} rates required for d={self.d}. Received {value=}"
            raise SpecError(msg)

        if any(not (np.isfinite(v) and v >= 0) for v in value):
            msg = f"Rates must be finite and non-negative. Received {value=}"
            raise SpecError(msg)

    @hamiltonian_diagonal.validator
    def _hamiltonian_diagonal_validator(
        self, attribute: object, value: tuple[float, ...]
    ) -> None:
        check_hamiltonian_diagonal(self.d, value)

    def _fourier_sums(self) -> npt.NDArray[np.complex128]:
        """(1/d) sum_k γ_k λ^{-k(m - n)}"""
        lam = np.exp(2j * np.pi / self.d)
        levels = np.arange(self.d)
        differences = np.subtract.outer(levels, levels)
        res = np.zeros((self.d, self.d), dtype=np.complex128)
        for k, gamma in enumerate(self.gammas, start=1):
            res += gamma * lam ** (-k * differences)

        return res / self.d

    @property
    def rates(self) -> npt.NDArray[np.float64]:
        """
        γ_mn = (1/d) sum_k γ_k Re(1 - λ^{-k(m-n)})

        Symmetric with zero diagonal.
        """
        return sum(self.gammas) / self.d - self._fourier_sums().real  # type: ignore[no-any-return]

    @property
    def frequencies(self) -> npt.NDArray[np.float64]:
        """
        ω_mn = -(1/d) Im sum_k γ_k λ^{-k(m-n)} + h_m - h_n

        Antisymmetric.
        """
        h = np.asarray(self.hamiltonian_diagonal)

        return -self._fourier_sums().imag + np.subtract.outer(h, h)  # type: ignore[no-any-return]

    def entries(self, t: float) -> npt.NDArray[np.complex128]:
        """
        c_mn(t)
        """
        return np.exp(-(1j * self.frequencies + self.rates) * t)  # type: ignore[no-any-return]

    def adjoint_factors(self, t: float) -> npt.NDArray[np.complex128]:
        """
        Factors F_mn(t) = c_nm(t) of Λ♯_t|m><n| = F_mn(t)|m><n|
        """
        return self.entries(t).T

    def product_coefficient(  # noqa: PLR0913
        self, t: float, m: int, n: int, k: int, l: int  # noqa: E741
    ) -> complex:
        """
        Coefficient of the deformed product of two matrix units

        |m><n| ·_t |k><l| = δ_nk c_nm(t) c_lk(t) / c_lm(t) |m><l|

        Parameters
        ----------
        t
            Time

        m, n, k, l
            Indices of the two matrix units

        Returns
        -------
        :
            δ_nk c_nm(t) c_lk(t) / c_lm(t)
        """
        if n != k:
            return 0.0j

        c = self.entries(t)

        return complex(c[n, m] * c[l, k] / c[l, m])

    def deformed_matrix_unit_product(
        self, t: float, m: int, n: int, k: int, l: int  # noqa: E741
    ) -> Operator:
        """
        |m><n| ·_t |k><l| in closed form
        """
        return self.product_coefficient(t, m, n, k, l) * matrix_unit(m, l, self.d)


def decoherence_matrix(
    gammas: Sequence[float],
    hamiltonian_diagonal: Optional[Sequence[float]] = None,
) -> DecoherenceMatrix:
    """
    Decoherence matrix for given rates

    Parameters
    ----------
    gammas
        γ_1, ..., γ_{d-1}

    hamiltonian_diagonal
        Optional h_m of H = sum_m h_m P_m

    Returns
    -------
    :
        Decoherence matrix

    Raises
    ------
    SpecError
        The rates or the Hamiltonian diagonal are invalid
    """
    d = len(gammas) + 1
    h = check_hamiltonian_diagonal(d, hamiltonian_diagonal)

    return DecoherenceMatrix(d=d, gammas=gammas, hamiltonian_diagonal=h.tolist())


def _matrix_unit_action(
    decoherence: DecoherenceMatrix, m: int, n: int
) -> Callable[[float], Operator]:
    element = matrix_unit(m, n, decoherence.d)

    return lambda t: decoherence.adjoint_factors(t)[m, n] * element


def pure_decoherence_d_level(
    gammas: Sequence[float] = (1.0, 2.0),
    hamiltonian_diagonal: Optional[Sequence[float]] = None,
) -> ModelInstance:
    """
    Pure decoherence of a d-level system, d = len(gammas) + 1

    Encoded with the jumps U_k at rates γ_k / d.
    For d = 2, U_1 = σ3 and this is the qubit phase damping generator.

    Parameters
    ----------
    gammas
        γ_1, ..., γ_{d-1}

    hamiltonian_diagonal
        Optional h_m of H = sum_m h_m P_m

    Returns
    -------
    :
        Model with the matrix units as canonical basis

    Raises
    ------
    SpecError
        The rates or the Hamiltonian diagonal are invalid
    """
    if len(gammas) < 1:
        msg = f"At least one rate is required. Received {gammas=}"
        raise SpecError(msg)

    decoherence = decoherence_matrix(gammas, hamiltonian_diagonal)
    d = decoherence.d
    unitaries = decoherence_unitaries(d)
    basis = matrix_unit_basis(d)
    rates = decoherence.rates
    frequencies = decoherence.frequencies

    oracles: dict[str, AdjointOracle] = {}
    for label, element in zip(basis.labels, basis.elements):
        m, n = np.argwhere(element)[0]
        limit: Optional[Operator]
        if rates[m, n] > ZERO_RATE_ATOL:
            limit = np.zeros_like(element)
        elif abs(frequencies[m, n]) <= ZERO_RATE_ATOL:
            limit = element
        else:
            limit = None

        oracles[label] = AdjointOracle(
            observable=element,
            action=_matrix_unit_action(decoherence, int(m), int(n)),
            limit=limit,
        )

    return ModelInstance(
        name="pure-decoherence",
        spec=LindbladSpec.from_jumps(
            hamiltonian=np.diag(decoherence.hamiltonian_diagonal),
            jumps=[
                (unitaries[k], gamma / d) for k, gamma in enumerate(gammas, start=1)
            ],
        ),
        canonical_basis=basis,
        oracles=oracles,
        direct_generator=diagonal_superoperator(d, -(rates + 1j * frequencies)),
        parameters={
            "gammas": list(decoherence.gammas),
            "d": d,
            "hamiltonian_diagonal": list(decoherence.hamiltonian_diagonal),
        },
        decoherence=decoherence,
    )
