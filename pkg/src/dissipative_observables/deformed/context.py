"""
Everything needed to evaluate the time-deformed product at a given time
"""

from __future__ import annotations

import math
from typing import Optional

from attrs import field, frozen
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.exceptions import DimensionError, IllConditionedError
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    inverse_propagator,
    propagator,
)
from dissipative_observables.operators.bases import OperatorBasis


def _non_negative_time(
    instance: DeformedAlgebraContext, attribute: object, value: float
) -> None:
    if not (math.isfinite(value) and value >= 0):
        msg = f"time must be finite and non-negative. Received {value=}"
        raise ValueError(msg)


def _at_least_one(
    instance: DeformedAlgebraContext, attribute: object, value: float
) -> None:
    if not value >= 1:
        msg = f"condition_estimate must be at least 1. Received {value=}"
        raise ValueError(msg)


@frozen(eq=False)
class DeformedAlgebraContext:
    """
    Adjoint generator, basis and time at which the deformed product is evaluated

    The deformation is A ·_t B = (Λ♯_t)⁻¹(Λ♯_t(A) Λ♯_t(B)) with Λ♯_t = exp(t L♯).
    Use [deformed_algebra_context][dissipative_observables.deformed.context.deformed_algebra_context]
    to create instances.
    """  # noqa: E501

    generator_adjoint: Superoperator
    """The adjoint generator L♯"""

    basis: OperatorBasis
    """Basis in which structure constants are expressed"""

    time: float = field(validator=_non_negative_time)
    """Time t"""

    condition_estimate: float = field(validator=_at_least_one)
    """Condition number estimate of Λ♯_t"""

    forward: Superoperator
    """Λ♯_t"""

    inverse: Optional[Superoperator]
    """
    (Λ♯_t)⁻¹

    `None` if Λ♯_t is too ill-conditioned to invert.
    """

    tolerances: Optional[Tolerances] = field(default=None, repr=False)
    """Tolerances to use"""

    def require_inverse(self) -> Superoperator:
        """
        Get (Λ♯_t)⁻¹

        Raises
        ------
        IllConditionedError
            Λ♯_t was too ill-conditioned to invert
        """
        if self.inverse is None:
            raise IllConditionedError(
                condition_estimate=self.condition_estimate,
                time=self.time,
                cond_max=resolve_tolerances(self.tolerances).cond_max,
            )

        return self.inverse


def deformed_algebra_context(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    time: float,
    tolerances: Optional[Tolerances] = None,
) -> DeformedAlgebraContext:
    """
    Build a context for evaluating deformed products

    If Λ♯_t is too ill-conditioned to invert, the context is still returned
    (structure constants can then be computed on the basis span),
    but products will raise.

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    basis
        Basis for structure constants

    time
        Time t (non-negative)

    tolerances
        Tolerances to use

    Returns
    -------
    :
        Initialised context
    """
    if generator_adjoint.dim != basis.dim:
        raise DimensionError(
            "deformed_algebra_context", [generator_adjoint.dim, basis.dim]
        )

    tols = resolve_tolerances(tolerances)
    forward = propagator(generator_adjoint, time)
    inverse: Optional[Superoperator]
    try:
        inverse, condition_estimate = inverse_propagator(
            generator_adjoint, time, tolerances=tols, forward=forward
        )
    except IllConditionedError as exc:
        logger.debug(
            f"Full inverse unavailable at {time=} "
            f"(condition estimate {exc.condition_estimate:.3e})"
        )
        inverse = None
        condition_estimate = exc.condition_estimate

    return DeformedAlgebraContext(
        generator_adjoint=generator_adjoint,
        basis=basis,
        time=time,
        condition_estimate=max(condition_estimate, 1.0),
        forward=forward,
        inverse=inverse,
        tolerances=tolerances,
    )
