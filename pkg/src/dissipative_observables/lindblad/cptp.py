"""
Checks of complete positivity, trace preservation and related properties
"""

from __future__ import annotations

from typing import Optional

import numpy as np
import numpy.typing as npt
from attrs import frozen

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.lindblad.superoperator import Superoperator, vec
from dissipative_observables.operators.core import max_abs


@frozen
class CptpReport:
    """
    Diagnostics of how close a superoperator is to a CPTP map

    All deviations are non-negative.
    """

    trace_preserving: bool
    """Whether the map preserves traces"""

    trace_deviation: float
    """max_{m,n} |Tr(S(|m><n|)) - δ_mn|"""

    hermiticity_preserving: bool
    """Whether the map sends Hermitian operators to Hermitian operators"""

    hermiticity_deviation: float
    """Max-entry deviation of the Choi matrix from Hermiticity"""

    choi_min_eigenvalue: float
    """Smallest eigenvalue of the (Hermitian part of the) Choi matrix"""

    completely_positive: bool
    """Whether `choi_min_eigenvalue` is non-negative within tolerance"""

    unital_adjoint: bool
    """Whether the adjoint map sends the identity to itself"""

    unital_deviation: float
    """Hilbert-Schmidt norm of S♯(1) - 1"""

    @property
    def is_cptp(self) -> bool:
        """Whether all the CPTP conditions hold"""
        return (
            self.trace_preserving
            and self.hermiticity_preserving
            and self.completely_positive
        )


def choi_matrix(superoperator: Superoperator) -> npt.NDArray[np.complex128]:
    """
    Choi matrix sum_{m,n} |m><n| ⊗ S(|m><n|)

    Parameters
    ----------
    superoperator
        Map of which to get the Choi matrix

    Returns
    -------
    :
        Choi matrix, shape (d², d²), with row index (m, i) and column index (n, j)
        holding <i|S(|m><n|)|j>
    """
    d = superoperator.dim
    # blocks[i, j, m, n] = <i|S(|m><n|)|j>
    blocks = superoperator.matrix.reshape((d, d, d, d), order="F")

    return blocks.transpose(2, 0, 3, 1).reshape(d**2, d**2)  # type: ignore[no-any-return]


def verify_cptp(
    superoperator: Superoperator, tolerances: Optional[Tolerances] = None
) -> CptpReport:
    """
    Check a superoperator against the CPTP conditions

    Failures are reported, not raised.
    Maps at negative times are legitimate linear algebra
    but are generally not completely positive.

    Parameters
    ----------
    superoperator
        Map to check

    tolerances
        Tolerances to use (`tol_herm` is the threshold for every check)

    Returns
    -------
    :
        Diagnostics
    """
    tols = resolve_tolerances(tolerances)
    d = superoperator.dim
    identity_vec = vec(np.eye(d, dtype=np.complex128))

    diagonal_slots = np.arange(d) * (d + 1)
    traces = superoperator.matrix[diagonal_slots, :].sum(axis=0)
    trace_deviation = max_abs(traces - identity_vec)

    choi = choi_matrix(superoperator)
    hermiticity_deviation = max_abs(choi - choi.conj().T)
    choi_min_eigenvalue = float(np.linalg.eigvalsh(0.5 * (choi + choi.conj().T))[0])

    unital_deviation = float(
        np.linalg.norm(superoperator.matrix.conj().T @ identity_vec - identity_vec)
    )

    return CptpReport(
        trace_preserving=trace_deviation <= tols.tol_herm,
        trace_deviation=trace_deviation,
        hermiticity_preserving=hermiticity_deviation <= tols.tol_herm,
        hermiticity_deviation=hermiticity_deviation,
        choi_min_eigenvalue=choi_min_eigenvalue,
        completely_positive=choi_min_eigenvalue >= -tols.tol_herm,
        unital_adjoint=unital_deviation <= tols.tol_herm,
        unital_deviation=unital_deviation,
    )
