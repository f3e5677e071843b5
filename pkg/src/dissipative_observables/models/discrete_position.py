"""
Decoherence in the discrete position of a particle on a circle

L rho = -γ [X, [X, rho]] with X the discrete position operator,
so L|m><n| = -γ (m - n)² |m><n|.
The clock unitaries U^k are untouched while the shifts V^l lose their unitarity,
yet the Schwinger relation U^k ·_t V^l = λ^{kl} V^l ·_t U^k survives
for the deformed product.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Callable, Optional

import numpy as np
import numpy.typing as npt

from dissipative_observables.deformed.context import DeformedAlgebraContext
from dissipative_observables.deformed.product import deformed_product
from dissipative_observables.exceptions import SpecError
from dissipative_observables.lindblad.spec import LindbladSpec
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    apply,
    propagator,
)
from dissipative_observables.models.instance import (
    AdjointOracle,
    ModelInstance,
    diagonal_superoperator,
    entrywise_oracle,
)
from dissipative_observables.operators.bases import (
    position_operator,
    schwinger_basis,
    schwinger_pair,
)
from dissipative_observables.operators.core import Operator, hs_norm

DEFAULT_DIM: int = 3
"""Default Hilbert space dimension"""


def check_hamiltonian_diagonal(
    d: int, hamiltonian_diagonal: Optional[Sequence[float]]
) -> npt.NDArray[np.float64]:
    """
    Check (and default) the diagonal h_m of a Hamiltonian H = sum_m h_m P_m

    Raises
    ------
    SpecError
        The diagonal has the wrong length or is not finite
    """
    if hamiltonian_diagonal is None:
        return np.zeros(d)

    res = np.asarray(hamiltonian_diagonal, dtype=np.float64)
    if res.shape != (d,) or not np.all(np.isfinite(res)):
        msg = (
            f"hamiltonian_diagonal must hold {d} finite values. "
            f"Received {hamiltonian_diagonal=}"
        )
        raise SpecError(msg)

    return res


def adjoint_entry_factors(
    gamma: float, hamiltonian_diagonal: npt.NDArray[np.float64]
) -> Callable[[float], npt.NDArray[np.complex128]]:
    """
    Entrywise action of Λ♯_t

    Λ♯_t|m><n| = exp(-γ(m - n)² t + i(h_m - h_n) t)|m><n|

    Parameters
    ----------
    gamma
        Decoherence rate

    hamiltonian_diagonal
        h_m

    Returns
    -------
    :
        t ↦ matrix of factors
    """
    d = hamiltonian_diagonal.shape[0]
    positions = np.arange(d)
    squared = np.subtract.outer(positions, positions) ** 2
    phases = np.subtract.outer(hamiltonian_diagonal, hamiltonian_diagonal)

    return lambda t: np.exp((-gamma * squared + 1j * phases) * t)


def discrete_position_decoherence(
    gamma: float = 1.0,
    d: int = DEFAULT_DIM,
    hamiltonian_diagonal: Optional[Sequence[float]] = None,
) -> ModelInstance:
    """
    Decoherence in the discrete position basis

    Encoded as a single Hermitian jump X = diag(1, ..., d) with rate 2γ.
    A Hamiltonian diagonal in the position basis only adds phases.

    Parameters
    ----------
    gamma
        Decoherence rate

    d
        Hilbert space dimension

    hamiltonian_diagonal
        Optional h_m of H = sum_m h_m P_m

    Returns
    -------
    :
        Model with the Schwinger monomials U^k V^l as canonical basis

    Raises
    ------
    SpecError
        A parameter is out of range
    """
    if not gamma > 0:
        msg = f"gamma must be positive. Received {gamma=}"
        raise SpecError(msg)

    if d < 2:  # noqa: PLR2004
        msg = f"d must be at least 2. Received {d=}"
        raise SpecError(msg)

    h = check_hamiltonian_diagonal(d, hamiltonian_diagonal)
    basis = schwinger_basis(d)
    factors = adjoint_entry_factors(gamma, h)

    oracles: dict[str, AdjointOracle] = {}
    for label, element in zip(basis.labels, basis.elements):
        # only the diagonal (clock) monomials survive
        survives = label.endswith("V^0")
        oracles[label] = entrywise_oracle(
            element,
            factors,
            limit=element if survives else np.zeros_like(element),
        )

    positions = np.arange(d)
    differences = np.subtract.outer(positions, positions)
    # Schrödinger picture: L|m><n| = (-γ(m - n)² - i(h_m - h_n))|m><n|
    direct = diagonal_superoperator(
        d, -gamma * differences**2 - 1j * np.subtract.outer(h, h)
    )

    return ModelInstance(
        name="discrete-position",
        spec=LindbladSpec.from_jumps(
            hamiltonian=np.diag(h), jumps=[(position_operator(d), 2 * gamma)]
        ),
        canonical_basis=basis,
        oracles=oracles,
        direct_generator=direct,
        parameters={"gamma": gamma, "d": d, "hamiltonian_diagonal": h.tolist()},
    )


def schwinger_relation_residual(
    ctx: DeformedAlgebraContext,
    k: int,
    l: int,  # noqa: E741
) -> float:
    """
    ‖U^k ·_t V^l - λ^{kl} V^l ·_t U^k‖ (Hilbert-Schmidt norm)

    Parameters
    ----------
    ctx
        Context of the deformed product

    k
        Power of the clock unitary

    l
        Power of the shift unitary

    Returns
    -------
    :
        Residual of the deformed Schwinger relation
    """
    d = ctx.generator_adjoint.dim
    clock, shift = schwinger_pair(d)
    u_k = np.linalg.matrix_power(clock, k)
    v_l = np.linalg.matrix_power(shift, l)
    lam = np.exp(2j * np.pi / d)

    forward = deformed_product(ctx, u_k, v_l)
    backward = deformed_product(ctx, v_l, u_k)

    return hs_norm(forward - lam ** (k * l) * backward)


def unitarity_defect(
    generator_adjoint: Superoperator,
    l: int,  # noqa: E741
    t: float,
) -> float:
    """
    ‖Λ♯_t(V^l) Λ♯_t(V^l)† - 1‖ (Hilbert-Schmidt norm)

    Zero for unitary Λ♯_t(V^l).
    """
    d = generator_adjoint.dim
    _, shift = schwinger_pair(d)
    evolved = apply(propagator(generator_adjoint, t), np.linalg.matrix_power(shift, l))

    return hs_norm(evolved @ evolved.conj().T - np.eye(d))
