"""
Tests of the checks of models against their closed forms
"""

from __future__ import annotations

import attrs
import numpy as np
import pytest

from dissipative_observables.exceptions import OracleMismatchError
from dissipative_observables.models import AdjointOracle, build_model
from dissipative_observables.validation import model as validation_model
from dissipative_observables.validation.error_catching import CheckResultsStoreError
from dissipative_observables.validation.model import (
    DUALITY_PAIRS,
    check_decoherence_products,
    check_duality,
    check_oracle,
    check_truncation_convergence,
    get_validate_model_result,
    model_rate,
    reference_times,
    truncation_study,
)


REGISTERED_MODELS = (
    pytest.param("qubit-dephasing", {}, id="qubit-dephasing"),
    pytest.param("qubit-dephasing-h3", {}, id="qubit-dephasing-h3"),
    pytest.param("qubit-dephasing-h1", {}, id="qubit-dephasing-h1"),
    pytest.param("damped-oscillator", {"dim": 9}, id="damped-oscillator"),
    pytest.param("phase-damped-oscillator", {"dim": 9}, id="phase-damped"),
    pytest.param("discrete-position", {}, id="discrete-position"),
    pytest.param("pure-decoherence", {}, id="pure-decoherence"),
    pytest.param(
        "pure-decoherence", {"rates": [1.0, 2.0, 3.0]}, id="pure-decoherence-d4"
    ),
)


@pytest.mark.parametrize("name, overrides", REGISTERED_MODELS)
def test_registered_models_pass(name, overrides):
    model = build_model(name, **overrides)

    res = get_validate_model_result(model, seed=12, truncation_pair=(8, 16))

    res.raise_if_errors()
    assert res.all_passed
    assert res.max_deviation < 1e-4


@pytest.mark.parametrize("name, overrides", REGISTERED_MODELS)
def test_check_duality(name, overrides):
    model = build_model(name, **overrides)

    res = check_duality(model, reference_times(model), seed=5)

    assert 0.0 <= res < 1e-10


def test_check_duality_pair_count(monkeypatch, qubit_dephasing):
    calls = []
    original = validation_model.random_density_matrix

    def counting(*args, **kwargs):
        calls.append(args)
        return original(*args, **kwargs)

    monkeypatch.setattr(validation_model, "random_density_matrix", counting)

    check_duality(qubit_dephasing, (0.5, 1.0, 2.0), seed=5)

    assert len(calls) == DUALITY_PAIRS == 200


def test_check_names_pure_decoherence():
    res = get_validate_model_result(build_model("pure-decoherence"), seed=1)

    descriptions = {v.description for v in res.check_results}
    assert {
        "CPTP",
        "Duality",
        "Generator encoding",
        "Adjoint generator",
        "Kernel of L♯",
        "Decoherence matrix",
        "Deformed products of matrix units",
    } <= descriptions
    assert "Oracle Λ♯_t(E01)" in descriptions
    assert "Limit Λ♯_∞(E01)" in descriptions


def test_wrong_oracle_is_reported(qubit_dephasing):
    sigma1 = qubit_dephasing.oracles["sigma1"].observable
    # wrong decay rate
    oracles = {
        **qubit_dephasing.oracles,
        "sigma1": AdjointOracle(sigma1, lambda t: np.exp(-2 * t) * sigma1),
    }
    model = attrs.evolve(qubit_dephasing, oracles=oracles)

    res = get_validate_model_result(model, seed=0)

    assert not res.all_passed
    assert [v.description for v in res.checks_failing] == ["Oracle Λ♯_t(sigma1)"]
    assert res.max_deviation > 0.1
    with pytest.raises(CheckResultsStoreError, match="Oracle Λ♯_t\\(sigma1\\)"):
        res.raise_if_errors()


def test_check_oracle_tolerance(qubit_dephasing):
    generator_adjoint = qubit_dephasing.generator_adjoint()
    oracle = qubit_dephasing.oracles["sigma2"]

    assert check_oracle(generator_adjoint, oracle, (0.5, 1.0)) < 1e-12

    shifted = AdjointOracle(oracle.observable, lambda t: oracle.action(t) + 1e-6)
    with pytest.raises(OracleMismatchError, match="shifted"):
        check_oracle(generator_adjoint, shifted, (0.5,), description="shifted")


def test_reference_times():
    model = build_model("qubit-dephasing", gamma=2.0)

    assert model_rate(model) == 2.0
    assert reference_times(model, (1.0, 4.0)) == (0.5, 2.0)


def test_model_rate_pure_decoherence():
    assert model_rate(build_model("pure-decoherence", rates=[0.5, 3.0])) == 3.0


def test_truncation_study():
    model = build_model("damped-oscillator", dim=9)

    low, high = truncation_study(model, (6, 12))

    assert low < 1e-9
    assert high < 1e-9
    assert check_truncation_convergence(model, (6, 12)) == high


def test_decoherence_products_need_decoherence(qubit_dephasing):
    with pytest.raises(ValueError, match="has no decoherence matrix"):
        check_decoherence_products(qubit_dephasing, (1.0,))
