"""
Container for a model: its generator, canonical basis and closed-form oracles
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Callable, Optional

import numpy as np
import numpy.typing as npt
from attrs import field, frozen

from dissipative_observables.contraction.classification import LieAlgebraLabel
from dissipative_observables.lindblad.spec import LindbladSpec, build_generator
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    adjoint_generator,
)
from dissipative_observables.operators.bases import OperatorBasis
from dissipative_observables.operators.core import Operator, as_operator

if TYPE_CHECKING:
    from dissipative_observables.models.pure_decoherence import DecoherenceMatrix


@frozen(eq=False)
class AdjointOracle:
    """
    Closed-form Heisenberg-picture evolution of one observable
    """

    observable: Operator = field(converter=as_operator)
    """The observable A"""

    action: Callable[[float], Operator]
    """t ↦ Λ♯_t(A)"""

    limit: Optional[Operator] = None
    """Λ♯_∞(A), if it exists and is known"""


def _optional_label(value: Any) -> Optional[LieAlgebraLabel]:
    if value is None:
        return None

    return LieAlgebraLabel(value)


@frozen(eq=False)
class ModelInstance:
    """
    A worked example: generator, canonical basis and what we know in closed form
    """

    name: str
    """Registry name"""

    spec: LindbladSpec
    """Generator definition"""

    canonical_basis: OperatorBasis
    """Basis used for the contraction analysis"""

    oracles: dict[str, AdjointOracle]
    """Closed-form adjoint actions, keyed by observable label"""

    direct_generator: Superoperator
    """
    The generator L assembled directly from its closed-form action

    This does not go through the GKSL assembly,
    so comparing it with `build_generator(spec)` checks the jump encoding.
    """

    expected_contraction: Optional[LieAlgebraLabel] = field(
        default=None, converter=_optional_label
    )
    """Label of the contracted algebra of the canonical basis, if known"""

    parameters: dict[str, Any] = field(factory=dict)
    """Parameters the model was built with"""

    decoherence: Optional[DecoherenceMatrix] = None
    """Decoherence matrix, for pure decoherence models"""

    @property
    def dim(self) -> int:
        """Hilbert space dimension"""
        return self.spec.dim

    def generator(self) -> Superoperator:
        """
        Generator L, assembled from the spec
        """
        return build_generator(self.spec)

    def generator_adjoint(self) -> Superoperator:
        """
        Adjoint generator L♯
        """
        return adjoint_generator(self.generator())

    def to_summary_dict(self) -> dict[str, Any]:
        """
        Summary for listings
        """
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.canonical_basis.labels),
            "expected_contraction": (
                None
                if self.expected_contraction is None
                else self.expected_contraction.value
            ),
            "parameters": self.parameters,
        }


def entrywise_oracle(
    observable: Operator,
    factors: Callable[[float], npt.NDArray[np.complex128]],
    limit: Optional[Operator] = None,
) -> AdjointOracle:
    """
    Oracle for maps acting entrywise (Schur multipliers)

    Parameters
    ----------
    observable
        Observable A

    factors
        t ↦ F(t) with Λ♯_t(A)_mn = F(t)_mn A_mn

    limit
        Λ♯_∞(A), if known

    Returns
    -------
    :
        Oracle
    """
    operator = as_operator(observable)

    return AdjointOracle(
        observable=operator,
        action=lambda t: factors(t) * operator,
        limit=limit,
    )


def diagonal_superoperator(
    dim: int, entry_rates: npt.NDArray[np.complex128]
) -> Superoperator:
    """
    Superoperator acting as E_mn ↦ r_mn E_mn

    Parameters
    ----------
    dim
        Hilbert space dimension d

    entry_rates
        r, shape (d, d)

    Returns
    -------
    :
        Diagonal superoperator (column-stacked ordering)
    """
    # column stacking: E_mn sits at position m + d n, i.e. the ravel of r.T
    return Superoperator(dim=dim, matrix=np.diag(entry_rates.T.ravel()))
