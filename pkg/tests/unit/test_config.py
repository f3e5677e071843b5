"""
Tests of tolerances and their overrides
"""

from __future__ import annotations

import pytest

from dissipative_observables.config import (
    Tolerances,
    get_default_tolerances,
    resolve_tolerances,
    set_default_tolerances,
    tolerances_from_environment,
)


def test_defaults():
    res = Tolerances()

    assert res.tol_limit == 1e-7
    assert res.cond_max == 1e12
    assert res.n_guard == 2


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("DISSIPATIVE_OBSERVABLES_COND_MAX", "1e14")
    monkeypatch.setenv("DISSIPATIVE_OBSERVABLES_N_GUARD", "4")

    res = tolerances_from_environment()

    assert res.cond_max == 1e14
    assert res.n_guard == 4
    assert res.tol_herm == Tolerances().tol_herm


def test_environment_overrides_apply_to_base(monkeypatch):
    monkeypatch.setenv("DISSIPATIVE_OBSERVABLES_TOL_LIMIT", "1e-5")

    res = tolerances_from_environment(Tolerances(cond_max=10.0))

    assert res == Tolerances(cond_max=10.0, tol_limit=1e-5)


def test_default_tolerances_read_environment(monkeypatch):
    monkeypatch.setenv("DISSIPATIVE_OBSERVABLES_TOL_KERNEL", "1e-6")

    assert get_default_tolerances().tol_kernel == 1e-6
    assert resolve_tolerances(None).tol_kernel == 1e-6


def test_set_default_tolerances():
    custom = Tolerances(tol_closure=1e-4)
    set_default_tolerances(custom)

    assert get_default_tolerances() is custom
    assert resolve_tolerances(None) is custom

    explicit = Tolerances()
    assert resolve_tolerances(explicit) is explicit


@pytest.mark.parametrize(
    "kwargs, match",
    (
        pytest.param({"cond_max": 0.0}, "cond_max must be positive", id="cond-max"),
        pytest.param({"tol_herm": -1e-3}, "tol_herm must be positive", id="tol-herm"),
        pytest.param({"n_guard": -1}, "'n_guard' must be >= 0", id="n-guard"),
    ),
)
def test_invalid_tolerances(kwargs, match):
    with pytest.raises(ValueError, match=match):
        Tolerances(**kwargs)


def test_invalid_environment_override(monkeypatch):
    monkeypatch.setenv("DISSIPATIVE_OBSERVABLES_TOL_ORTH", "-1")

    with pytest.raises(ValueError, match="tol_orth must be positive"):
        tolerances_from_environment()
