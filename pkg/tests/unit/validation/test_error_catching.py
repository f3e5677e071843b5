"""
Tests of running checks without stopping at the first failure
"""

from __future__ import annotations

import pytest

from dissipative_observables.exceptions import OracleMismatchError
from dissipative_observables.validation.error_catching import (
    CheckResult,
    CheckResultsStore,
    CheckResultsStoreError,
)


def passing_check(value: float) -> float:
    return value


def mismatching_check() -> float:
    raise OracleMismatchError("Λ♯_t(sigma1)", deviation=0.25, tolerance=1e-9)


def broken_check() -> float:
    msg = "Something else went wrong"
    raise KeyError(msg)


def test_store_records_everything():
    crs = CheckResultsStore()

    res_pass = crs.wrap(passing_check, func_description="Passing")(1e-12)
    res_mismatch = crs.wrap(mismatching_check, func_description="Mismatch")()
    res_broken = crs.wrap(broken_check, func_description="Broken")()

    assert res_pass.passed
    assert res_pass.result == 1e-12
    assert res_mismatch.failed
    assert isinstance(res_mismatch.exception, OracleMismatchError)
    assert "OracleMismatchError" in res_mismatch.exception_info
    assert res_broken.failed

    assert not crs.all_passed
    assert crs.checks_passing == (res_pass,)
    assert crs.checks_failing == (res_mismatch, res_broken)
    assert crs.max_deviation == 0.25
    assert crs.checks_summary_str(passing=True) == "33.33% (1 / 3)"
    assert crs.checks_summary_str(passing=False) == "66.67% (2 / 3)"


def test_deviation():
    assert CheckResult(description="x", passed=True, result=0.5).deviation == 0.5
    assert CheckResult(description="x", passed=True, result="ok").deviation is None

    exc = KeyError("x")
    res = CheckResult(description="x", passed=False, exception=exc, exception_info="")
    assert res.deviation is None


def test_raise_if_errors():
    crs = CheckResultsStore()
    crs.wrap(passing_check, func_description="Passing")(0.0)

    crs.raise_if_errors()

    crs.wrap(mismatching_check, func_description="Mismatch")()
    with pytest.raises(CheckResultsStoreError) as exc_info:
        crs.raise_if_errors()

    msg = str(exc_info.value)
    assert "Checks passing: 50.00% (1 / 2)" in msg
    assert "Checks failing: 50.00% (1 / 2)" in msg
    assert "Mismatch (OracleMismatchError)" in msg
    assert "deviation=2.500e-01 exceeds tolerance=1.000e-09" in msg


def test_empty_store():
    crs = CheckResultsStore()

    assert crs.all_passed
    assert crs.max_deviation == 0.0
    assert crs.checks_summary_str(passing=True) == "0.00% (0 / 0)"


@pytest.mark.parametrize(
    "kwargs, match",
    (
        pytest.param(
            {"passed": True, "exception": KeyError("x")},
            "If the check passed, exception must be `None`",
            id="passed-with-exception",
        ),
        pytest.param(
            {"passed": False},
            "If the check failed, you must provide exception",
            id="failed-without-exception",
        ),
    ),
)
def test_check_result_consistency(kwargs, match):
    with pytest.raises(ValueError, match=match):
        CheckResult(description="x", **kwargs)


def test_to_frame_records():
    crs = CheckResultsStore()
    crs.wrap(passing_check, func_description="Passing")(1e-3)
    crs.wrap(broken_check, func_description="Broken")()

    assert crs.to_frame_records() == [
        {"description": "Passing", "passed": True, "deviation": 1e-3, "error": None},
        {
            "description": "Broken",
            "passed": False,
            "deviation": None,
            "error": "KeyError",
        },
    ]
