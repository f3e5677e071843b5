"""
Extrapolation of t → ∞ limits

The deformed product cannot be evaluated at arbitrarily large times
(inverting Λ♯_t loses all precision), so limits are extrapolated
from a finite schedule.
Each entry is accelerated with Aitken's Δ² process
and the accelerated estimates are then subjected to a Cauchy test.
Entries whose last values are already below `tol_limit` are taken to be zero.
Entries whose magnitude grows along the schedule are flagged as divergent,
together with the rate of their exponential growth.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Any, Optional, Union

import numpy as np
import numpy.typing as npt
from attrs import define, field, frozen
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.deformed.context import deformed_algebra_context
from dissipative_observables.deformed.schedule import validate_schedule
from dissipative_observables.deformed.structure import (
    StructureTensor,
    structure_constants,
)
from dissipative_observables.exceptions import ClosureError, DimensionError
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    apply,
    inverse_propagator,
    propagator,
)
from dissipative_observables.operators.bases import OperatorBasis
from dissipative_observables.operators.core import (
    Operator,
    check_same_dim,
    project_interior,
)
from dissipative_observables.parallelisation import run_parallel

TIME_SPACING_RTOL: float = 1e-9
"""Relative tolerance used to decide whether three times are equally spaced"""

AITKEN_DENOMINATOR_RTOL: float = 1e-13
"""Below this (relative) second difference, Aitken's process is not applied"""

CONTRACTION_RATIO_MAX: float = 0.9
"""
Largest ratio |x2 - x1| / |x1 - x0| for which a sequence counts as converging

Above it, Aitken's process is not applied and the entry is not considered settled.
"""


@frozen
class DivergenceFlag:
    """
    Returned instead of a limit when a sequence does not converge
    """

    growth_rate: float
    """Slope of log|value| against t, fitted over the schedule"""

    final_delta: float
    """Difference between the last two extrapolated estimates"""

    times: tuple[float, ...] = field(converter=tuple)
    """Times that were evaluated"""


@frozen
class DivergentEntry:
    """
    Structure constant C^k_ij which grows along the schedule
    """

    index: tuple[int, int, int]
    """(k, i, j)"""

    growth_rate: float
    """Slope of log|C^k_ij| against t"""


@define
class LimitReport:
    """
    Outcome of extracting the t → ∞ limit of structure constants
    """

    converged: bool
    """Whether the limit was found within `tol_limit`"""

    limit: Optional[StructureTensor]
    """Limit tensor (time = ∞), `None` if the extraction did not converge"""

    divergent_entries: tuple[DivergentEntry, ...]
    """Entries that grow without bound"""

    times_used: tuple[float, ...]
    """Times at which the structure constants were evaluated"""

    final_delta: float
    """Largest entrywise change between the last two extrapolated estimates"""

    tensors: tuple[StructureTensor, ...] = field(repr=False)
    """Structure constants at each time in `times_used`"""

    def __attrs_post_init__(self) -> None:
        """
        Check consistency of the report
        """
        if self.converged and (self.divergent_entries or self.limit is None):
            msg = "A converged report needs a limit and no divergent entries"
            raise ValueError(msg)

    def to_json_dict(self) -> dict[str, Any]:
        """
        Convert to raw JSON data
        """
        return {
            "converged": self.converged,
            "final_delta": self.final_delta,
            "times_used": list(self.times_used),
            "divergent_entries": [
                {"index": list(entry.index), "growth_rate": entry.growth_rate}
                for entry in self.divergent_entries
            ],
            "limit": None if self.limit is None else self.limit.to_json_dict(),
        }


def _equally_spaced(t0: float, t1: float, t2: float) -> bool:
    return math.isclose(t1 - t0, t2 - t1, rel_tol=TIME_SPACING_RTOL)


def aitken_extrapolate(
    x0: npt.NDArray[np.complex128],
    x1: npt.NDArray[np.complex128],
    x2: npt.NDArray[np.complex128],
) -> npt.NDArray[np.complex128]:
    """
    Entrywise Aitken Δ² extrapolation of three successive values

    x2 - (x2 - x1)² / (x2 - 2 x1 + x0).
    Where the second difference is negligible,
    or the steps do not shrink by at least `CONTRACTION_RATIO_MAX`,
    x2 is returned unchanged.
    A rotating phase of constant modulus would otherwise be sent to
    a spurious limit.
    """
    second_difference = x2 - 2 * x1 + x0
    scale = np.maximum(np.maximum(np.abs(x0), np.abs(x1)), np.abs(x2))
    usable = np.abs(second_difference) > AITKEN_DENOMINATOR_RTOL * scale
    usable &= np.abs(x2 - x1) < CONTRACTION_RATIO_MAX * np.abs(x1 - x0)
    safe = np.where(usable, second_difference, 1.0)

    return np.where(usable, x2 - (x2 - x1) ** 2 / safe, x2)  # type: ignore[no-any-return]


def extrapolate(
    series: npt.NDArray[np.complex128], times: Sequence[float]
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.float64]]:
    """
    Extrapolate a series of arrays to t → ∞

    Parameters
    ----------
    series
        Values, the first axis running over `times`

    times
        Times (validated schedule)

    Returns
    -------
    :
        The extrapolated limit and the entrywise difference between
        the last two extrapolated estimates.
        If only one estimate is available, the difference is taken
        between it and the last value of the series.
    """
    estimates = []
    for j in range(2, len(times)):
        if _equally_spaced(times[j - 2], times[j - 1], times[j]):
            estimates.append(
                aitken_extrapolate(series[j - 2], series[j - 1], series[j])
            )
        else:
            estimates.append(series[j])

    if len(estimates) == 1:
        delta = np.abs(estimates[0] - series[-1])
    else:
        delta = np.abs(estimates[-1] - estimates[-2])

    return estimates[-1], delta


def growth_rates(
    series: npt.NDArray[np.complex128], times: Sequence[float]
) -> npt.NDArray[np.float64]:
    """
    Entrywise slope of log|value| against t (least squares)
    """
    magnitudes = np.abs(series).reshape(len(times), -1)
    logs = np.log(np.maximum(magnitudes, np.finfo(np.float64).tiny))
    t = np.asarray(times, dtype=np.float64)
    centred = t - t.mean()
    slopes = centred @ (logs - logs.mean(axis=0)) / (centred @ centred)

    return slopes.reshape(series.shape[1:])  # type: ignore[no-any-return]


def _negligible(
    series: npt.NDArray[np.complex128], tolerances: Tolerances
) -> npt.NDArray[np.bool_]:
    # the last three values are all below tol_limit
    return np.all(np.abs(series[-3:]) < tolerances.tol_limit, axis=0)  # type: ignore[no-any-return]


def _settle_negligible(
    series: npt.NDArray[np.complex128],
    limit: npt.NDArray[np.complex128],
    delta: npt.NDArray[np.float64],
    tolerances: Tolerances,
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.float64]]:
    """
    Send entries which are already negligible to zero

    Their uncertainty is bounded by the largest of their last three values.
    """
    negligible = _negligible(series, tolerances)
    tail = np.max(np.abs(series[-3:]), axis=0)

    return np.where(negligible, 0.0, limit), np.where(negligible, tail, delta)


def _unsettled(
    series: npt.NDArray[np.complex128],
    delta: npt.NDArray[np.float64],
    tolerances: Tolerances,
) -> npt.NDArray[np.bool_]:
    # steps that do not shrink count as unsettled whatever the extrapolated delta
    steps = np.abs(np.diff(series[-3:], axis=0))
    not_shrinking = (steps[-1] >= CONTRACTION_RATIO_MAX * steps[-2]) & (
        steps[-1] >= tolerances.tol_limit
    )
    unsettled = (delta >= tolerances.tol_limit) | not_shrinking

    return unsettled & ~_negligible(series, tolerances)  # type: ignore[no-any-return]


def _divergence_mask(
    series: npt.NDArray[np.complex128],
    times: Sequence[float],
    delta: npt.NDArray[np.float64],
    tolerances: Tolerances,
) -> tuple[npt.NDArray[np.bool_], npt.NDArray[np.float64]]:
    rates = growth_rates(series, times)
    grows = rates * (times[-1] - times[0]) > math.log(2)
    mask = grows & _unsettled(series, delta, tolerances)
    mask &= np.abs(series[-1]) > tolerances.tol_limit

    return mask, rates


def _zero_small(
    values: npt.NDArray[np.complex128], tolerances: Tolerances
) -> npt.NDArray[np.complex128]:
    out = np.array(values, dtype=np.complex128)
    out.real[np.abs(out.real) < tolerances.tol_limit] = 0.0
    out.imag[np.abs(out.imag) < tolerances.tol_limit] = 0.0

    return out


def _limit_of_operators(
    values: Sequence[Operator], times: tuple[float, ...], tolerances: Tolerances
) -> Union[Operator, DivergenceFlag]:
    series = np.stack(values)
    limit, delta = extrapolate(series, times)
    limit, delta = _settle_negligible(series, limit, delta, tolerances)
    final_delta = float(np.max(delta, initial=0.0))
    if not np.any(_unsettled(series, delta, tolerances)):
        return _zero_small(limit, tolerances)

    norms = np.linalg.norm(series.reshape(len(times), -1), axis=1)
    growth_rate = float(growth_rates(norms, times))
    logger.debug(f"No limit found ({final_delta=:.3e}, {growth_rate=:.3e})")

    return DivergenceFlag(growth_rate=growth_rate, final_delta=final_delta, times=times)


def weak_limit_observable(  # noqa: PLR0913
    generator_adjoint: Superoperator,
    observable: Operator,
    schedule: Sequence[float],
    tolerances: Optional[Tolerances] = None,
    interior: Optional[int] = None,
) -> Union[Operator, DivergenceFlag]:
    """
    Limit of Λ♯_t(A) as t → ∞

    In finite dimensions the weak limit (against all states)
    and the norm limit coincide, so the limit is extrapolated entrywise.

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    observable
        Observable A

    schedule
        Times at which to evaluate Λ♯_t(A)

    tolerances
        Tolerances to use (`tol_limit` is the Cauchy tolerance)

    interior
        If supplied, only the leading `interior` x `interior` block is considered
        (for truncated models)

    Returns
    -------
    :
        The limit (entries below `tol_limit` set to zero),
        or a [DivergenceFlag][dissipative_observables.deformed.limits.DivergenceFlag]
        if the sequence did not settle

    Raises
    ------
    ScheduleError
        The schedule is invalid
    """
    times = validate_schedule(schedule)
    tols = resolve_tolerances(tolerances)

    values = []
    for t in times:
        evolved = apply(propagator(generator_adjoint, t), observable)
        if interior is not None:
            evolved = project_interior(evolved, interior)

        values.append(evolved)

    return _limit_of_operators(values, times, tols)


def product_limit(  # noqa: PLR0913
    generator_adjoint: Superoperator,
    a: Operator,
    b: Operator,
    schedule: Sequence[float],
    tolerances: Optional[Tolerances] = None,
    interior: Optional[int] = None,
) -> Union[Operator, DivergenceFlag]:
    """
    Limit of the deformed product A ·_t B as t → ∞

    Convergence of the structure constants does not imply that
    the products themselves converge, so this is reported separately.

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    a
        Left factor

    b
        Right factor

    schedule
        Times at which to evaluate the product

    tolerances
        Tolerances to use

    interior
        If supplied, only the leading `interior` x `interior` block is considered

    Returns
    -------
    :
        The limit or a divergence flag

    Raises
    ------
    IllConditionedError
        Λ♯_t cannot be inverted at one of the schedule's times

    ScheduleError
        The schedule is invalid
    """
    times = validate_schedule(schedule)
    tols = resolve_tolerances(tolerances)
    check_same_dim("product_limit", a, b)
    if a.shape[0] != generator_adjoint.dim:
        raise DimensionError("product_limit", [generator_adjoint.dim, a.shape[0]])

    values = []
    for t in times:
        forward = propagator(generator_adjoint, t)
        inverse, _ = inverse_propagator(
            generator_adjoint, t, tolerances=tols, forward=forward
        )
        product = apply(inverse, apply(forward, a) @ apply(forward, b))
        if interior is not None:
            product = project_interior(product, interior)

        values.append(product)

    return _limit_of_operators(values, times, tols)


def _structure_constants_at(
    time: float,
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    tolerances: Optional[Tolerances],
) -> StructureTensor:
    ctx = deformed_algebra_context(
        generator_adjoint, basis, time, tolerances=tolerances
    )
    try:
        return structure_constants(ctx, on_span=True)
    except ClosureError:
        return structure_constants(ctx)


def structure_constants_along(  # noqa: PLR0913
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    schedule: Sequence[float],
    tolerances: Optional[Tolerances] = None,
    n_processes: int = 1,
) -> tuple[StructureTensor, ...]:
    """
    Structure constants at each time of a schedule

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    basis
        Basis

    schedule
        Times (must be non-negative and finite, need not be a limit schedule)

    tolerances
        Tolerances to use

    n_processes
        Number of processes to spread the times over

    Returns
    -------
    :
        Structure constants, in the order of `schedule`

    Raises
    ------
    ClosureError
        A deformed commutator leaves the span of the basis

    IllConditionedError
        The structure constants at one of the times cannot be computed
        within `cond_max`
    """
    return run_parallel(
        _structure_constants_at,
        schedule,
        input_desc="schedule times",
        n_processes=n_processes,
        generator_adjoint=generator_adjoint,
        basis=basis,
        tolerances=tolerances,
    )


def asymptotic_structure_constants(  # noqa: PLR0913
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    schedule: Sequence[float],
    tolerances: Optional[Tolerances] = None,
    n_processes: int = 1,
) -> LimitReport:
    """
    Extract the t → ∞ limit of the structure constants of the deformed commutator

    This is the structure of the contracted algebra.

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    basis
        Basis in which the structure constants are expressed

    schedule
        Times at which to evaluate the structure constants.
        See [default_schedule][dissipative_observables.deformed.schedule.default_schedule].

    tolerances
        Tolerances to use (`tol_limit` is the Cauchy tolerance)

    n_processes
        Number of processes to spread the times over.
        The result does not depend on this.

    Returns
    -------
    :
        Limit report

    Raises
    ------
    ClosureError
        A deformed commutator leaves the span of the basis

    IllConditionedError
        The structure constants at one of the times cannot be computed
        within `cond_max`

    ScheduleError
        The schedule is invalid
    """  # noqa: E501
    times = validate_schedule(schedule)
    tols = resolve_tolerances(tolerances)

    tensors = structure_constants_along(
        generator_adjoint, basis, times, tolerances=tolerances, n_processes=n_processes
    )
    series = np.stack([tensor.values for tensor in tensors])
    limit, delta = extrapolate(series, times)
    limit, delta = _settle_negligible(series, limit, delta, tols)
    final_delta = float(np.max(delta, initial=0.0))

    divergent, rates = _divergence_mask(series, times, delta, tols)
    divergent_entries = tuple(
        DivergentEntry(
            index=(int(k), int(i), int(j)), growth_rate=float(rates[k, i, j])
        )
        for k, i, j in zip(*np.nonzero(divergent))
    )

    unsettled = _unsettled(series, delta, tols)
    converged = not np.any(unsettled) and not divergent_entries
    logger.debug(
        f"Limit extraction over {len(times)} times: "
        f"{converged=}, {final_delta=:.3e}, {int(np.sum(unsettled))} unsettled "
        f"and {len(divergent_entries)} divergent entries"
    )

    limit_tensor: Optional[StructureTensor] = None
    if converged:
        limit_tensor = StructureTensor(
            values=_zero_small(limit, tols),
            time=math.inf,
            labels=basis.labels,
            closure_residual=max(t.closure_residual for t in tensors),
            condition_estimate=max(t.condition_estimate for t in tensors),
        )

    return LimitReport(
        converged=converged,
        limit=limit_tensor,
        divergent_entries=divergent_entries,
        times_used=times,
        final_delta=final_delta,
        tensors=tensors,
    )
