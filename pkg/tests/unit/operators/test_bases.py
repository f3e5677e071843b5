"""
Tests of operator bases and expansions
"""

from __future__ import annotations

import re

import numpy as np
import numpy.testing as npt
import pytest

from dissipative_observables.exceptions import (
    BasisError,
    DimensionError,
    ExpansionError,
)
from dissipative_observables.operators.bases import (
    OperatorBasis,
    expand_in_basis,
    matrix_unit_basis,
    pauli_basis,
    position_operator,
    schwinger_basis,
    schwinger_pair,
)
from dissipative_observables.operators.core import hs_inner
from dissipative_observables.testing import random_operator


def test_pauli_basis_is_orthogonal():
    basis = pauli_basis()

    assert basis.orthogonal
    assert basis.labels == ("sigma0", "sigma1", "sigma2", "sigma3")
    npt.assert_allclose(basis.gram_matrix(), 2 * np.eye(4))


def test_expand_in_basis_reconstructs():
    basis = pauli_basis()
    operator = random_operator(2, seed=11)

    coefficients = expand_in_basis(operator, basis)

    npt.assert_allclose(basis.combine(coefficients), operator, atol=1e-14)


def test_expand_in_non_orthogonal_basis():
    basis = OperatorBasis.from_operators(
        [
            np.eye(2),
            np.array([[1, 1], [0, 0]]),
            np.array([[0, 0], [1, 0]]),
            np.diag([1, 0]),
        ],
        labels=["a", "b", "c", "d"],
    )
    assert not basis.orthogonal

    coefficients = expand_in_basis(np.array([[2.0, 3.0], [4.0, 5.0]]), basis)

    npt.assert_allclose(coefficients, [5.0, 3.0, 4.0, -6.0], atol=1e-12)


def test_expand_outside_span_raises():
    basis = pauli_basis().select(["sigma1", "sigma2"])

    with pytest.raises(ExpansionError):
        expand_in_basis(np.diag([1.0, -1.0]), basis)


def test_expand_dimension_mismatch():
    with pytest.raises(DimensionError):
        expand_in_basis(np.eye(3), pauli_basis())


@pytest.mark.parametrize(
    "elements, labels, error_msg",
    (
        pytest.param([], [], "A basis needs at least one element", id="empty"),
        pytest.param(
            [np.eye(2), 2 * np.eye(2)],
            ["a", "b"],
            "linearly dependent",
            id="dependent",
        ),
        pytest.param(
            [np.eye(2), np.diag([1.0, 0.0])],
            ["a", "a"],
            "Basis labels must be unique",
            id="duplicate_labels",
        ),
        pytest.param(
            [np.eye(2)],
            ["a", "b"],
            "Received 2 labels for 1 elements",
            id="label_count",
        ),
    ),
)
def test_invalid_basis(elements, labels, error_msg):
    with pytest.raises(BasisError, match=re.escape(error_msg)):
        OperatorBasis(elements=elements, labels=labels)


def test_wrongly_flagged_orthogonal_basis():
    with pytest.raises(BasisError, match="flagged as orthogonal"):
        OperatorBasis(
            elements=[np.eye(2), np.diag([1.0, 0.0])],
            labels=["a", "b"],
            orthogonal=True,
        )


def test_mixed_dimensions():
    with pytest.raises(DimensionError):
        OperatorBasis(elements=[np.eye(2), np.eye(3)], labels=["a", "b"])


def test_index_unknown_label():
    with pytest.raises(KeyError, match="'sigma9'"):
        pauli_basis().index("sigma9")


@pytest.mark.parametrize("d", (2, 3, 4))
def test_matrix_unit_basis(d):
    basis = matrix_unit_basis(d)

    assert basis.size == d**2
    assert basis.orthogonal
    assert basis.labels[1] == "E01"
    assert basis.element("E10")[1, 0] == 1.0


def test_matrix_unit_labels_large_d():
    assert matrix_unit_basis(11).labels[1] == "E0,1"


def test_position_operator():
    npt.assert_equal(np.diag(position_operator(3)), [1, 2, 3])


@pytest.mark.parametrize("d", (2, 3, 5, 8))
def test_schwinger_pair(d):
    clock, shift = schwinger_pair(d)
    lam = np.exp(2j * np.pi / d)

    npt.assert_allclose(clock @ clock.conj().T, np.eye(d), atol=1e-12)
    npt.assert_allclose(shift @ shift.conj().T, np.eye(d), atol=1e-12)
    # V|m> = |m+1>
    npt.assert_allclose(shift, np.roll(np.eye(d), 1, axis=0), atol=1e-12)
    for k in range(d):
        for l in range(d):  # noqa: E741
            u_k = np.linalg.matrix_power(clock, k)
            v_l = np.linalg.matrix_power(shift, l)
            npt.assert_allclose(u_k @ v_l, lam ** (k * l) * v_l @ u_k, atol=1e-10)


def test_schwinger_basis():
    basis = schwinger_basis(3)

    assert basis.size == 9
    assert basis.orthogonal
    assert hs_inner(basis.elements[1], basis.elements[1]) == pytest.approx(3.0)
    assert schwinger_basis(3, include_identity=False).size == 8


def test_schwinger_pair_needs_two_levels():
    with pytest.raises(ValueError, match="d must be at least 2"):
        schwinger_pair(1)
