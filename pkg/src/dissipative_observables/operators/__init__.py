"""
Operators, operator bases and Hilbert-Schmidt geometry
"""

from __future__ import annotations

from dissipative_observables.operators.bases import (
    OperatorBasis,
    expand_in_basis,
    matrix_unit_basis,
    pauli_basis,
    position_operator,
    schwinger_basis,
    schwinger_pair,
)
from dissipative_observables.operators.core import (
    Operator,
    as_operator,
    commutator,
    hs_inner,
    hs_norm,
    project_interior,
)
from dissipative_observables.operators.fock import ladder_operators, oscillator_basis

__all__ = [
    "Operator",
    "OperatorBasis",
    "as_operator",
    "commutator",
    "expand_in_basis",
    "hs_inner",
    "hs_norm",
    "ladder_operators",
    "matrix_unit_basis",
    "oscillator_basis",
    "pauli_basis",
    "position_operator",
    "project_interior",
    "schwinger_basis",
    "schwinger_pair",
]
