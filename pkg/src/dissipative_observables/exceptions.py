"""
Exceptions
"""

from __future__ import annotations

from collections.abc import Sequence


class DimensionError(ValueError):
    """
    Raised when operators (or superoperators) of different dimensions are combined
    """

    def __init__(self, operation: str, dims: Sequence[int]) -> None:
        """
        Initialise the error

        Parameters
        ----------
        operation
            The operation that was attempted

        dims
            The (operator-level) dimensions of the inputs
        """
        error_msg = (
            f"{operation} requires inputs of a single dimension. Received {dims=}"
        )

        super().__init__(error_msg)


class BasisError(ValueError):
    """
    Raised when a collection of operators does not form a usable basis
    """


class ExpansionError(ValueError):
    """
    Raised when an operator cannot be reproduced from its basis expansion
    """

    def __init__(self, residual: float, tolerance: float) -> None:
        """
        Initialise the error

        Parameters
        ----------
        residual
            Norm of the part of the operator not captured by the expansion

        tolerance
            The largest residual that would have been accepted
        """
        error_msg = (
            "The operator does not lie in the span of the basis. "
            f"Reconstruction {residual=:.3e} exceeds {tolerance=:.3e}"
        )

        super().__init__(error_msg)


class SpecError(ValueError):
    """
    Raised when a generator specification or model parameter is invalid
    """


class IllConditionedError(ArithmeticError):
    """
    Raised when inverting a propagator would lose all numerical accuracy
    """

    def __init__(self, condition_estimate: float, time: float, cond_max: float) -> None:
        """
        Initialise the error

        Parameters
        ----------
        condition_estimate
            Estimated condition number of the propagator

        time
            Time at which the propagator was evaluated

        cond_max
            Largest condition number we accept
        """
        self.condition_estimate = condition_estimate
        self.time = time
        self.cond_max = cond_max

        error_msg = (
            f"Refusing to invert the propagator at {time=}. "
            f"Its condition estimate ({condition_estimate:.3e}) "
            f"exceeds {cond_max=:.3e}"
        )

        super().__init__(error_msg)


class ClosureError(ValueError):
    """
    Raised when a (deformed) commutator of basis elements leaves the basis span

    Also raised when the propagator does not map the span of a basis into itself.
    """

    def __init__(self, labels: tuple[str, ...], residual: float, time: float) -> None:
        """
        Initialise the error

        Parameters
        ----------
        labels
            Labels of the basis elements whose bracket left the span.
            A single label means the image of that element under the propagator
            left the span.

        residual
            Norm of the out-of-span component

        time
            Time at which the bracket was evaluated
        """
        self.labels = labels
        self.residual = residual

        if len(labels) == 1:
            what = f"The propagated element {labels[0]}"
        else:
            what = f"The bracket [{', '.join(labels)}]"

        error_msg = (
            f"{what} at {time=} "
            "does not lie in the span of the basis "
            f"(out-of-span {residual=:.3e}). "
            "The chosen basis does not generate a closed family under the product."
        )

        super().__init__(error_msg)


class ScheduleError(ValueError):
    """
    Raised when a time schedule is unusable
    """

    def __init__(self, schedule: Sequence[float], reason: str) -> None:
        """
        Initialise the error

        Parameters
        ----------
        schedule
            The schedule that was supplied

        reason
            What is wrong with it
        """
        error_msg = f"Invalid time schedule ({reason}). Received {list(schedule)=}"

        super().__init__(error_msg)


class OracleMismatchError(AssertionError):
    """
    Raised when a numerical result disagrees with its closed-form counterpart
    """

    def __init__(self, description: str, deviation: float, tolerance: float) -> None:
        """
        Initialise the error

        Parameters
        ----------
        description
            What was compared

        deviation
            Largest deviation found

        tolerance
            Largest deviation we accept
        """
        self.deviation = deviation
        self.tolerance = tolerance

        error_msg = f"{description}: {deviation=:.3e} exceeds {tolerance=:.3e}"

        super().__init__(error_msg)
