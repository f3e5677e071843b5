"""
Tools for running checks without stopping at the first failure
"""

from __future__ import annotations

import traceback
from functools import wraps
from typing import Any, Callable, TypeVar, Union

import attr
from attrs import define, field
from loguru import logger
from typing_extensions import ParamSpec

from dissipative_observables.exceptions import OracleMismatchError
from dissipative_observables.logging import (
    LOG_LEVEL_INFO_INDIVIDUAL_CHECK,
    LOG_LEVEL_INFO_INDIVIDUAL_CHECK_ERROR,
)

P = ParamSpec("P")
T = TypeVar("T")


def failure_info_consistent_with_passed(
    instance: CheckResult,
    attribute: attr.Attribute[Any],
    value: Union[Any, None],
) -> None:
    """
    Check the failure information is consistent with the passed status

    Parameters
    ----------
    instance
        Instance to check

    attribute
        Attribute being set

    value
        Value being set

    Raises
    ------
    ValueError
        `value` is inconsistent with `instance.passed`.
    """
    if instance.passed and value is not None:
        msg = (
            f"If the check passed, {attribute.name} must be `None`. "
            f"Received {value=}"
        )
        raise ValueError(msg)

    if not instance.passed and value is None:
        msg = f"If the check failed, you must provide {attribute.name}"
        raise ValueError(msg)


@define
class CheckResult:
    """
    The result of a single check

    A result object: either the value the check returned or the failure.
    """

    description: str
    """Description of the check"""

    passed: bool
    """Whether the check passed"""

    result: Any = field(default=None)
    """
    If the check passed, what the check returned

    For comparisons against closed forms, this is the largest deviation.
    """

    exception: Union[Exception, None] = field(
        default=None, validator=failure_info_consistent_with_passed
    )
    """If the check failed, the exception that was raised"""

    exception_info: Union[str, None] = field(
        default=None, validator=failure_info_consistent_with_passed
    )
    """
    If the check failed, the formatted traceback

    This is created with `traceback.format_exc`.
    """

    @property
    def failed(self) -> bool:
        """Whether the check failed"""
        return not self.passed

    @property
    def deviation(self) -> Union[float, None]:
        """
        Deviation found by the check, if it reported one
        """
        if self.passed:
            return self.result if isinstance(self.result, float) else None

        if isinstance(self.exception, OracleMismatchError):
            return self.exception.deviation

        return None


class CheckResultsStoreError(ValueError):
    """
    Raised when a [`CheckResultsStore`][dissipative_observables.validation.error_catching.CheckResultsStore] holds failed checks
    """  # noqa: E501

    def __init__(self, crs: CheckResultsStore) -> None:
        """
        Initialise the error

        Parameters
        ----------
        crs
            The store that contains failures
        """
        error_msg_l: list[str] = [
            f"Checks passing: {crs.checks_summary_str(passing=True)}",
            f"Checks failing: {crs.checks_summary_str(passing=False)}",
        ]

        checks_failing = crs.checks_failing
        if checks_failing:
            error_msg_l.append("")
            error_msg_l.append("Failing checks details")
            for failure in checks_failing:
                error_msg_l.append("")
                error_msg_l.append(
                    f"{failure.description} ({type(failure.exception).__name__})"
                )
                if failure.exception_info is None:
                    msg = "Should have an exception here"
                    raise AssertionError(msg)

                error_msg_l.extend(failure.exception_info.splitlines())

        error_msg = "\n".join(error_msg_l)

        super().__init__(error_msg)


@define
class CheckResultsStore:
    """
    Store of check results
    """

    check_results: list[CheckResult] = field(factory=list)
    """Stored results"""

    @property
    def all_passed(self) -> bool:
        """Whether all the checks passed"""
        return all(v.passed for v in self.check_results)

    @property
    def checks_passing(self) -> tuple[CheckResult, ...]:
        """Checks that passed"""
        return tuple(v for v in self.check_results if v.passed)

    @property
    def checks_failing(self) -> tuple[CheckResult, ...]:
        """Checks that failed"""
        return tuple(v for v in self.check_results if v.failed)

    @property
    def max_deviation(self) -> float:
        """
        Largest deviation reported by any check (zero if none reported one)
        """
        deviations = [
            v.deviation for v in self.check_results if v.deviation is not None
        ]

        return max(deviations, default=0.0)

    def wrap(
        self, func_to_call: Callable[P, T], func_description: str
    ) -> Callable[P, CheckResult]:
        """
        Wrap a check function

        The results of calling the check function are stored by `self`.

        Parameters
        ----------
        func_to_call
            Function to call

        func_description
            A description of `func_to_call`, used in summaries and errors

        Returns
        -------
        :
            The wrapped function.

            The wrapped function always returns a result,
            irrespective of whether `func_to_call` raised an error or not.
        """

        @wraps(func_to_call)
        def decorated(*args: P.args, **kwargs: P.kwargs) -> CheckResult:
            try:
                res_func = func_to_call(*args, **kwargs)
                res = CheckResult(
                    description=func_description,
                    passed=True,
                    result=res_func,
                )
                logger.log(
                    LOG_LEVEL_INFO_INDIVIDUAL_CHECK.name,
                    f"{func_description} passed",
                )

            except Exception as exc:
                logger.log(
                    LOG_LEVEL_INFO_INDIVIDUAL_CHECK_ERROR.name,
                    f"{func_description} failed ({type(exc).__name__})",
                )
                res = CheckResult(
                    description=func_description,
                    passed=False,
                    exception=exc,
                    exception_info=traceback.format_exc(),
                )

            self.check_results.append(res)

            return res

        return decorated

    def raise_if_errors(self) -> None:
        """
        Raise a `CheckResultsStoreError` if any of the checks failed

        Raises
        ------
        CheckResultsStoreError
            One of the checks in `self.check_results` failed.
        """
        if not self.all_passed:
            raise CheckResultsStoreError(self)

    def checks_summary_str(self, passing: bool) -> str:
        """
        Get a summary of the checks we have performed

        Parameters
        ----------
        passing
            Should we return the summary as the number of checks
            which are passing (`True`) or failing (`False`)?

        Returns
        -------
        :
            Summary of the checks
        """
        denominator = len(self.check_results)
        if denominator == 0:
            return "0.00% (0 / 0)"

        if passing:
            numerator = len(self.checks_passing)

        else:
            numerator = len(self.checks_failing)

        pct = numerator / denominator * 100
        return f"{pct:.2f}% ({numerator} / {denominator})"

    def to_frame_records(self) -> list[dict[str, Any]]:
        """
        One record per check, suitable for tabulation
        """
        return [
            {
                "description": v.description,
                "passed": v.passed,
                "deviation": v.deviation,
                "error": None if v.exception is None else type(v.exception).__name__,
            }
            for v in self.check_results
        ]
