"""
Physical definition of a Lindblad generator and its assembly as a superoperator

We use the GKSL form

    L rho = -i [H, rho] + sum_k gamma_k (L_k rho L_k† - 1/2 {L_k† L_k, rho})
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import Optional

import numpy as np
from attrs import field, frozen
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.exceptions import SpecError
from dissipative_observables.lindblad.superoperator import Superoperator
from dissipative_observables.logging import LOG_LEVEL_INFO_MODEL
from dissipative_observables.operators.core import (
    Operator,
    as_operator,
    dagger,
    is_hermitian,
    max_abs,
)


@frozen(eq=False)
class JumpOperator:
    """
    A jump (Lindblad) operator and its rate
    """

    operator: Operator = field(converter=as_operator)
    """The jump operator L_k"""

    rate: float = field(converter=float)
    """The rate gamma_k (units of 1/time)"""


def _as_jump_tuple(values: Iterable[JumpOperator]) -> tuple[JumpOperator, ...]:
    return tuple(values)


@frozen(eq=False)
class LindbladSpec:
    """
    Hamiltonian plus jump operators with rates

    The invariants (Hermitian Hamiltonian, non-negative rates, shared dimension)
    are checked on initialisation and a
    [SpecError][dissipative_observables.exceptions.SpecError] raised if they fail.
    """

    hamiltonian: Operator = field(converter=as_operator)
    """Hamiltonian (units of angular frequency)"""

    jumps: tuple[JumpOperator, ...] = field(converter=_as_jump_tuple, factory=tuple)
    """Jump operators and their rates"""

    tolerances: Optional[Tolerances] = field(default=None, repr=False)
    """Tolerances to use for the Hermiticity check"""

    def __attrs_post_init__(self) -> None:
        """
        Check the invariants

        Raises
        ------
        SpecError
            An invariant is violated
        """
        tols = resolve_tolerances(self.tolerances)
        if not is_hermitian(self.hamiltonian, tols):
            deviation = max_abs(self.hamiltonian - dagger(self.hamiltonian))
            msg = (
                "The Hamiltonian must be Hermitian. "
                f"max|H - H†| = {deviation:.3e} > {tols.tol_herm=:.3e}"
            )
            raise SpecError(msg)

        for i, jump in enumerate(self.jumps):
            if not jump.rate >= 0:
                msg = f"Rates must be non-negative. Jump {i} has {jump.rate=}"
                raise SpecError(msg)

            if jump.operator.shape != self.hamiltonian.shape:
                msg = (
                    f"Jump {i} has shape {jump.operator.shape}, "
                    f"the Hamiltonian has shape {self.hamiltonian.shape}"
                )
                raise SpecError(msg)

    @classmethod
    def from_jumps(
        cls,
        hamiltonian: Operator,
        jumps: Iterable[tuple[Operator, float]],
        tolerances: Optional[Tolerances] = None,
    ) -> LindbladSpec:
        """
        Initialise from (operator, rate) pairs
        """
        return cls(
            hamiltonian=hamiltonian,
            jumps=tuple(JumpOperator(operator=op, rate=rate) for op, rate in jumps),
            tolerances=tolerances,
        )

    @property
    def dim(self) -> int:
        """Hilbert space dimension"""
        return self.hamiltonian.shape[0]

    @property
    def max_rate(self) -> float:
        """Largest jump rate (zero if there are no jumps)"""
        return max((jump.rate for jump in self.jumps), default=0.0)


def build_generator(spec: LindbladSpec) -> Superoperator:
    """
    Assemble the generator L as a superoperator matrix

    Column stacking is used, i.e. vec(A rho B) = (B^T ⊗ A) vec(rho).

    Parameters
    ----------
    spec
        Generator definition

    Returns
    -------
    :
        Matrix of L
    """
    d = spec.dim
    identity = np.eye(d, dtype=np.complex128)
    ham = spec.hamiltonian

    res = -1j * (np.kron(identity, ham) - np.kron(ham.T, identity))
    for jump in spec.jumps:
        op = jump.operator
        op_dag_op = dagger(op) @ op
        res = res + jump.rate * (
            np.kron(op.conj(), op)
            - 0.5 * np.kron(identity, op_dag_op)
            - 0.5 * np.kron(op_dag_op.T, identity)
        )

    logger.log(
        LOG_LEVEL_INFO_MODEL.name,
        f"Built generator with {d=} and {len(spec.jumps)} jump operator(s)",
    )

    return Superoperator(dim=d, matrix=res)


def adjoint_generator_from_spec(spec: LindbladSpec) -> Superoperator:
    """
    Assemble the adjoint generator L♯ directly from the adjoint GKSL form

        L♯ A = i [H, A] + sum_k gamma_k (L_k† A L_k - 1/2 {L_k† L_k, A})

    This is independent of
    [adjoint_generator][dissipative_observables.lindblad.superoperator.adjoint_generator]
    so the two can be compared.

    Parameters
    ----------
    spec
        Generator definition

    Returns
    -------
    :
        Matrix of L♯
    """  # noqa: E501
    d = spec.dim
    identity = np.eye(d, dtype=np.complex128)
    ham = spec.hamiltonian

    res = 1j * (np.kron(identity, ham) - np.kron(ham.T, identity))
    for jump in spec.jumps:
        op = jump.operator
        op_dag_op = dagger(op) @ op
        res = res + jump.rate * (
            np.kron(op.T, dagger(op))
            - 0.5 * np.kron(identity, op_dag_op)
            - 0.5 * np.kron(op_dag_op.T, identity)
        )

    return Superoperator(dim=d, matrix=res)
