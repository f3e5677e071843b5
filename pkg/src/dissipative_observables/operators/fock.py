"""
Truncated Fock space (harmonic oscillator) operators
"""

from __future__ import annotations

import numpy as np

from dissipative_observables.operators.bases import OperatorBasis
from dissipative_observables.operators.core import Operator, dagger

OSCILLATOR_LABELS: tuple[str, ...] = ("a", "a_dag", "N", "1")
"""Labels of the canonical oscillator basis"""


def ladder_operators(n_max: int) -> tuple[Operator, Operator, Operator]:
    """
    Ladder operators on the Fock space truncated at `n_max` quanta

    The space has dimension `n_max + 1` (levels 0, ..., n_max).
    Truncation only corrupts [a, a†]: its last diagonal entry is `-n_max`
    instead of 1. N a = a (N - 1) holds exactly.

    Parameters
    ----------
    n_max
        Highest occupation number kept

    Returns
    -------
    :
        (a, a†, N = a†a)
    """
    if n_max < 1:
        msg = f"n_max must be at least 1. Received {n_max=}"
        raise ValueError(msg)

    annihilation = np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1).astype(np.complex128)
    creation = dagger(annihilation)
    number = np.diag(np.arange(n_max + 1)).astype(np.complex128)

    return annihilation, creation, number


def interior_levels(n_max: int, n_guard: int) -> int:
    """
    Number of leading levels unaffected by the truncation boundary

    These are the levels 0, ..., n_max - n_guard.
    """
    if not 0 <= n_guard < n_max:
        msg = f"n_guard must be in [0, n_max). Received {n_guard=} and {n_max=}"
        raise ValueError(msg)

    return n_max - n_guard + 1


def oscillator_basis(n_max: int, n_guard: int = 2) -> OperatorBasis:
    """
    The basis {a, a†, N, 1} on a truncated Fock space

    Comparisons are restricted to the interior levels
    (see [interior_levels][dissipative_observables.operators.fock.interior_levels]).

    Parameters
    ----------
    n_max
        Highest occupation number kept

    n_guard
        Number of top levels excluded from comparisons

    Returns
    -------
    :
        Interior-projected oscillator basis
    """
    annihilation, creation, number = ladder_operators(n_max)
    identity = np.eye(n_max + 1, dtype=np.complex128)

    return OperatorBasis.from_operators(
        [annihilation, creation, number, identity],
        labels=OSCILLATOR_LABELS,
        interior=interior_levels(n_max, n_guard),
    )
