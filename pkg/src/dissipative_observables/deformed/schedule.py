"""
Time schedules along which t → ∞ limits are extrapolated
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Optional

import numpy as np
import scipy.linalg
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.deformed.structure import (
    restricted_adjoint,
    restricted_generator,
)
from dissipative_observables.exceptions import ClosureError, ScheduleError
from dissipative_observables.lindblad.superoperator import Superoperator
from dissipative_observables.operators.bases import OperatorBasis

MIN_SCHEDULE_LENGTH: int = 3
"""Shortest schedule from which a limit can be extrapolated"""

DEFAULT_REFERENCE_STEPS: tuple[float, ...] = tuple(float(v) for v in range(2, 26, 2))
"""Values of γ_ref·t tried by the default schedule"""

MINIMUM_REFERENCE_STEPS: int = 5
"""The default schedule always contains the first this many steps"""

DECAY_RATE_RTOL: float = 1e-14
"""Decay rates below this (relative to the fastest) count as zero"""


def validate_schedule(schedule: Sequence[float]) -> tuple[float, ...]:
    """
    Check that a schedule is usable for limit extraction

    Parameters
    ----------
    schedule
        Times to check

    Returns
    -------
    :
        The schedule, as a tuple of floats

    Raises
    ------
    ScheduleError
        The schedule has fewer than three entries,
        contains negative or non-finite times
        or is not strictly increasing
    """
    times = tuple(float(v) for v in schedule)
    if len(times) < MIN_SCHEDULE_LENGTH:
        raise ScheduleError(times, f"at least {MIN_SCHEDULE_LENGTH} times required")

    if not all(math.isfinite(v) for v in times):
        raise ScheduleError(times, "all times must be finite")

    if any(v < 0 for v in times):
        raise ScheduleError(times, "all times must be non-negative")

    if any(later <= earlier for earlier, later in zip(times[:-1], times[1:])):
        raise ScheduleError(times, "times must be strictly increasing")

    return times


def geometric_schedule(t_min: float, t_max: float, count: int) -> tuple[float, ...]:
    """
    Geometrically spaced schedule from `t_min` to `t_max` (inclusive)

    Raises
    ------
    ScheduleError
        The inputs do not define a valid schedule
    """
    if not (t_min > 0 and t_max > t_min and count >= MIN_SCHEDULE_LENGTH):
        raise ScheduleError(
            [t_min, t_max],
            f"geometric schedules need 0 < t_min < t_max and {count=} >= 3",
        )

    return validate_schedule(np.geomspace(t_min, t_max, count).tolist())


def reference_rate(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Largest decay rate relevant to a basis

    This is the largest |Re λ| over the eigenvalues of L♯ restricted to the span
    of the basis. If the span is not mapped into itself, the eigenvalues of
    the full L♯ are used instead.
    """
    try:
        restricted = restricted_generator(
            generator_adjoint, basis, tolerances=tolerances
        )
    except ClosureError:
        logger.debug("Basis span not invariant, using the full generator's spectrum")
        restricted = generator_adjoint.matrix

    eigenvalues = scipy.linalg.eigvals(restricted)

    return float(np.max(np.abs(eigenvalues.real), initial=0.0))


def default_schedule(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    rate_ref: Optional[float] = None,
    tolerances: Optional[Tolerances] = None,
) -> tuple[float, ...]:
    """
    Default schedule for extracting the contraction limit of a basis

    Times are γ_ref·t = 2, 4, 6, ..., extended (up to 24)
    while the matrix of Λ♯_t on the basis span stays invertible within `cond_max`.
    The first five steps are always included.

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    basis
        Basis of interest

    rate_ref
        Reference rate γ_ref.
        If not supplied, see
        [reference_rate][dissipative_observables.deformed.schedule.reference_rate].

    tolerances
        Tolerances to use

    Returns
    -------
    :
        Schedule

    Raises
    ------
    ScheduleError
        There is no dissipation, so no reference rate can be inferred
    """
    tols = resolve_tolerances(tolerances)
    if rate_ref is None:
        rate_ref = reference_rate(generator_adjoint, basis, tolerances=tols)

    if not rate_ref > tols.tol_kernel:
        raise ScheduleError(
            [], f"cannot infer a time scale, the reference rate is {rate_ref}"
        )

    times: list[float] = []
    for i, step in enumerate(DEFAULT_REFERENCE_STEPS):
        t = step / rate_ref
        if i >= MINIMUM_REFERENCE_STEPS:
            try:
                restricted, _ = restricted_adjoint(
                    generator_adjoint, basis, t, tolerances=tols
                )
            except ClosureError:
                break

            if not np.linalg.cond(restricted) < tols.cond_max:
                break

        times.append(t)

    logger.debug(f"Default schedule ({rate_ref=}): {times}")

    return validate_schedule(times)


def slowest_decay_rate(generator_adjoint: Superoperator) -> float:
    """
    Smallest non-zero decay rate -Re λ over the eigenvalues of L♯

    If nothing decays, 1 is returned.
    """
    decay = -scipy.linalg.eigvals(generator_adjoint.matrix).real
    fastest = max(1.0, float(np.max(np.abs(decay), initial=0.0)))
    positive = decay[decay > DECAY_RATE_RTOL * fastest]
    if positive.size == 0:
        return 1.0

    return float(np.min(positive))


def limit_schedule(generator_adjoint: Superoperator) -> tuple[float, ...]:
    """
    Schedule along which weak limits of observables are extrapolated

    The schedule is expressed in units of the slowest non-zero decay rate,
    so every decaying component is negligible by its end.
    This is longer than the
    [default_schedule][dissipative_observables.deformed.schedule.default_schedule]
    whenever some observable decays more slowly than the reference rate.
    """
    rate = slowest_decay_rate(generator_adjoint)

    return tuple(step / rate for step in DEFAULT_REFERENCE_STEPS)
