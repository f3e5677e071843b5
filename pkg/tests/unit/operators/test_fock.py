"""
Tests of truncated Fock space operators
"""

from __future__ import annotations

import numpy as np
import numpy.testing as npt
import pytest

from dissipative_observables.operators.core import commutator
from dissipative_observables.operators.fock import (
    OSCILLATOR_LABELS,
    interior_levels,
    ladder_operators,
    oscillator_basis,
)


def test_ladder_operators():
    a, a_dag, number = ladder_operators(4)

    npt.assert_allclose(a_dag @ a, number)
    npt.assert_allclose(number @ a, a @ (number - np.eye(5)))

    canonical = commutator(a, a_dag)
    npt.assert_allclose(np.diag(canonical), [1, 1, 1, 1, -4])


def test_ladder_operators_need_one_level():
    with pytest.raises(ValueError, match="n_max must be at least 1"):
        ladder_operators(0)


@pytest.mark.parametrize(
    "n_max, n_guard, exp",
    (
        pytest.param(10, 2, 9, id="default_guard"),
        pytest.param(10, 0, 11, id="no_guard"),
    ),
)
def test_interior_levels(n_max, n_guard, exp):
    assert interior_levels(n_max, n_guard) == exp


def test_interior_levels_invalid_guard():
    with pytest.raises(ValueError, match="n_guard must be in"):
        interior_levels(4, 4)


def test_oscillator_basis_hides_the_boundary():
    basis = oscillator_basis(6)
    a, a_dag = basis.element("a"), basis.element("a_dag")

    assert basis.labels == OSCILLATOR_LABELS
    assert basis.interior == 5
    # [a, a†] = 1 on the interior levels
    npt.assert_allclose(
        basis.projected(commutator(a, a_dag)), basis.projected(basis.element("1"))
    )
