"""
Superoperators: linear maps on operators, stored as matrices on vectorised operators

The vectorisation is column stacking, vec(A rho B) = (B^T ⊗ A) vec(rho).
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg
from attrs import field, frozen
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.exceptions import DimensionError, IllConditionedError
from dissipative_observables.operators.core import Operator

EIGENVECTOR_CONDITION_MAX: float = 1e6
"""Largest eigenvector condition number for which we exponentiate via eigenvalues"""


def vec(operator: Operator) -> npt.NDArray[np.complex128]:
    """
    Column-stacking vectorisation
    """
    return np.asarray(operator, dtype=np.complex128).reshape(-1, order="F")


def unvec(vector: npt.NDArray[np.complex128], dim: int) -> Operator:
    """
    Inverse of [vec][dissipative_observables.lindblad.superoperator.vec]
    """
    return vector.reshape((dim, dim), order="F")


def _as_superoperator_matrix(value: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    res = np.array(value, dtype=np.complex128)
    res.setflags(write=False)

    return res


@frozen(eq=False)
class Superoperator:
    """
    Linear map on d x d operators, stored as a d² x d² matrix
    """

    dim: int
    """Dimension d of the operators the map acts on"""

    matrix: npt.NDArray[np.complex128] = field(converter=_as_superoperator_matrix)
    """Matrix acting on column-stacked vectorisations"""

    @matrix.validator
    def _matrix_validator(
        self, attribute: object, value: npt.NDArray[np.complex128]
    ) -> None:
        expected = (self.dim**2, self.dim**2)
        if value.shape != expected:
            msg = f"matrix must have shape {expected}. Received {value.shape=}"
            raise ValueError(msg)

    @property
    def is_diagonal(self) -> bool:
        """
        Whether the matrix is diagonal

        Diagonal superoperators act entrywise on operators (Schur multipliers).
        """
        off_diagonal = self.matrix - np.diag(np.diag(self.matrix))

        return not np.any(off_diagonal)

    def __matmul__(self, other: Superoperator) -> Superoperator:
        return compose(self, other)


def identity_superoperator(dim: int) -> Superoperator:
    """
    Identity map on d x d operators
    """
    return Superoperator(dim=dim, matrix=np.eye(dim**2, dtype=np.complex128))


def compose(first: Superoperator, second: Superoperator) -> Superoperator:
    """
    Composition `first ∘ second` (apply `second`, then `first`)

    Raises
    ------
    DimensionError
        The superoperators act on operators of different dimensions
    """
    if first.dim != second.dim:
        raise DimensionError("compose", [first.dim, second.dim])

    return Superoperator(dim=first.dim, matrix=first.matrix @ second.matrix)


def apply(superoperator: Superoperator, operator: Operator) -> Operator:
    """
    Apply a superoperator to an operator

    Parameters
    ----------
    superoperator
        Map to apply

    operator
        Operator on which to act

    Returns
    -------
    :
        The image of `operator`

    Raises
    ------
    DimensionError
        `operator` does not have the dimension `superoperator` acts on
    """
    if operator.shape != (superoperator.dim, superoperator.dim):
        raise DimensionError("apply", [superoperator.dim, operator.shape[0]])

    return unvec(superoperator.matrix @ vec(operator), superoperator.dim)


def adjoint_generator(generator: Superoperator) -> Superoperator:
    """
    Hilbert-Schmidt adjoint of a superoperator

    For a generator L this is the Heisenberg-picture generator L♯,
    defined by Tr((L♯A)† rho) = Tr(A† L rho).
    In the column-stacked representation this is the conjugate transpose.

    Parameters
    ----------
    generator
        Superoperator (typically a Lindblad generator)

    Returns
    -------
    :
        Its adjoint
    """
    return Superoperator(dim=generator.dim, matrix=generator.matrix.conj().T)


def _expm_eig(
    matrix: npt.NDArray[np.complex128], t: float
) -> Optional[npt.NDArray[np.complex128]]:
    eigenvalues, eigenvectors = np.linalg.eig(matrix)
    eigenvector_condition = np.linalg.cond(eigenvectors)
    if not eigenvector_condition < EIGENVECTOR_CONDITION_MAX:
        logger.debug(
            f"Eigenvector condition {eigenvector_condition:.3e} too large, "
            "falling back to Padé"
        )
        return None

    logger.debug(f"Exponentiating via eigenvalues ({eigenvector_condition=:.3e})")
    res: npt.NDArray[np.complex128] = (
        eigenvectors * np.exp(t * eigenvalues)
    ) @ np.linalg.inv(eigenvectors)

    return res


def propagator(generator: Superoperator, t: float) -> Superoperator:
    """
    Propagator exp(t L)

    Diagonal generators are exponentiated entrywise.
    Otherwise, diagonalisable generators with well-conditioned eigenvectors
    are exponentiated via their eigenvalues
    and everything else with scaling and squaring
    ([scipy.linalg.expm][]).

    Parameters
    ----------
    generator
        Generator L (or L♯)

    t
        Time. Negative values give backward evolution.

    Returns
    -------
    :
        exp(t L)
    """
    if not math.isfinite(t):
        msg = f"t must be finite. Received {t=}"
        raise ValueError(msg)

    if t == 0:
        return identity_superoperator(generator.dim)

    if generator.is_diagonal:
        logger.debug("Exponentiating a diagonal generator entrywise")
        return Superoperator(
            dim=generator.dim,
            matrix=np.diag(np.exp(t * np.diag(generator.matrix))),
        )

    res = _expm_eig(generator.matrix, t)
    if res is None:
        res = scipy.linalg.expm(t * generator.matrix)

    return Superoperator(dim=generator.dim, matrix=res)


def log_condition_estimate(
    generator: Superoperator, t: float, forward: Optional[Superoperator] = None
) -> float:
    """
    Natural logarithm of the condition number of exp(t L)

    For diagonal generators this is exact and computed without overflow.
    Otherwise the 2-norm condition number of the propagator is computed directly
    (from `forward` if it is supplied, which must then be exp(t L)).
    """
    if generator.is_diagonal:
        real_parts = np.diag(generator.matrix).real

        return float(abs(t) * (np.max(real_parts) - np.min(real_parts)))

    if forward is None:
        forward = propagator(generator, t)

    return math.log(np.linalg.cond(forward.matrix))


def _safe_exp(value: float) -> float:
    try:
        return math.exp(value)
    except OverflowError:
        return math.inf


def inverse_propagator(
    generator: Superoperator,
    t: float,
    tolerances: Optional[Tolerances] = None,
    forward: Optional[Superoperator] = None,
) -> tuple[Superoperator, float]:
    """
    Inverse of the propagator exp(t L), i.e. exp(-t L)

    Parameters
    ----------
    generator
        Generator L (or L♯)

    t
        Time of the propagator to invert

    tolerances
        Tolerances (`cond_max` is used)

    forward
        exp(t L), if it has already been computed

    Returns
    -------
    :
        exp(-t L) and the condition number estimate of exp(t L)

    Raises
    ------
    IllConditionedError
        The condition estimate exceeds `cond_max`
    """
    tols = resolve_tolerances(tolerances)
    log_cond = log_condition_estimate(generator, t, forward=forward)
    condition_estimate = _safe_exp(log_cond)
    logger.debug(f"Condition estimate of the propagator at {t=}: {condition_estimate}")
    if log_cond > math.log(tols.cond_max):
        raise IllConditionedError(
            condition_estimate=condition_estimate, time=t, cond_max=tols.cond_max
        )

    return propagator(generator, -t), max(condition_estimate, 1.0)
