"""
Heisenberg-picture evolution of a single observable, A_t = Λ♯_t(A)
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Any

import numpy as np
import pandas as pd
from attrs import field, frozen

from dissipative_observables.exceptions import ScheduleError
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    apply,
    propagator,
)
from dissipative_observables.operators.core import Operator, as_operator
from dissipative_observables.serialisation import array_to_pairs


def check_evolution_times(times: Sequence[float]) -> tuple[float, ...]:
    """
    Check times for an evolution

    Raises
    ------
    ScheduleError
        `times` is empty, contains negative or non-finite values
        or is not strictly increasing
    """
    res = tuple(float(v) for v in times)
    if not res:
        raise ScheduleError(res, "at least one time required")

    if not all(math.isfinite(v) and v >= 0 for v in res):
        raise ScheduleError(res, "all times must be finite and non-negative")

    if any(later <= earlier for earlier, later in zip(res[:-1], res[1:])):
        raise ScheduleError(res, "times must be strictly increasing")

    return res


def _as_operator_tuple(values: Sequence[Operator]) -> tuple[Operator, ...]:
    return tuple(as_operator(v) for v in values)


@frozen(eq=False)
class ObservableEvolution:
    """
    An observable evaluated along a set of times
    """

    observable: Operator = field(converter=as_operator)
    """The observable at t = 0"""

    times: tuple[float, ...] = field(converter=check_evolution_times)
    """Times"""

    values: tuple[Operator, ...] = field(converter=_as_operator_tuple)
    """Λ♯_t(A) at each time"""

    @values.validator
    def _values_validator(self, attribute: object, value: tuple[Operator, ...]) -> None:
        if len(value) != len(self.times):
            msg = f"{len(self.times)} times but {len(value)} values"
            raise ValueError(msg)

    @property
    def hs_norms(self) -> tuple[float, ...]:
        """Hilbert-Schmidt norm at each time"""
        return tuple(float(np.linalg.norm(v)) for v in self.values)

    def to_json_dict(self) -> dict[str, Any]:
        """
        Convert to raw JSON data

        Matrices are written as nested rows of [re, im] pairs.
        """
        return {
            "times": list(self.times),
            "observable": array_to_pairs(self.observable),
            "values": [array_to_pairs(v) for v in self.values],
            "hs_norms": list(self.hs_norms),
        }

    def to_frame(self) -> pd.DataFrame:
        """
        Long-form table with columns `time, row, col, re, im`
        """
        dim = self.observable.shape[0]
        rows, cols = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
        frames = [
            pd.DataFrame(
                {
                    "time": t,
                    "row": rows.ravel(),
                    "col": cols.ravel(),
                    "re": value.real.ravel(),
                    "im": value.imag.ravel(),
                }
            )
            for t, value in zip(self.times, self.values)
        ]

        return pd.concat(frames, ignore_index=True)


def evolve_observable(
    generator_adjoint: Superoperator, observable: Operator, times: Sequence[float]
) -> ObservableEvolution:
    """
    Evolve an observable in the Heisenberg picture

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    observable
        Observable A

    times
        Times at which to evaluate Λ♯_t(A)

    Returns
    -------
    :
        Λ♯_t(A) at each time

    Raises
    ------
    ScheduleError
        The times are invalid

    DimensionError
        `observable` and `generator_adjoint` have different dimensions
    """
    checked = check_evolution_times(times)
    values = [apply(propagator(generator_adjoint, t), observable) for t in checked]

    return ObservableEvolution(observable=observable, times=checked, values=values)
