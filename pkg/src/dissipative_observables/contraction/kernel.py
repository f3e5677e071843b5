"""
Observables unaffected by dissipation
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from typing import Optional

import numpy as np
from attrs import field, frozen
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.deformed.limits import (
    DivergenceFlag,
    weak_limit_observable,
)
from dissipative_observables.lindblad.superoperator import Superoperator, unvec, vec
from dissipative_observables.operators.bases import OperatorBasis
from dissipative_observables.operators.core import Operator, commutator, hs_norm


@frozen(eq=False)
class KernelReport:
    """
    Kernel of an adjoint generator L♯
    """

    kernel_dim: int
    """Dimension of the kernel"""

    kernel_basis: tuple[Operator, ...] = field(converter=tuple)
    """Hilbert-Schmidt orthonormal basis of the kernel"""

    closed_under_commutators: bool
    """Whether commutators of kernel elements stay in the kernel"""

    commutant_is_abelian: bool
    """Whether all kernel elements commute with each other"""


def kernel_of_adjoint(
    generator_adjoint: Superoperator, tolerances: Optional[Tolerances] = None
) -> KernelReport:
    """
    Kernel of the adjoint generator

    These are the fixed points of Λ♯_t, i.e. the observables
    which are not affected by dissipation.

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    tolerances
        Tolerances to use.
        Singular values below `tol_kernel` times the largest one
        are treated as zero.
        `tol_closure` is used for the commutator checks.

    Returns
    -------
    :
        Kernel report
    """
    tols = resolve_tolerances(tolerances)
    dim = generator_adjoint.dim
    _, singular_values, vh = np.linalg.svd(generator_adjoint.matrix)
    if singular_values[0] == 0:
        rank = 0
    else:
        rank = int(np.sum(singular_values > tols.tol_kernel * singular_values[0]))

    null_vectors = vh[rank:].conj()
    kernel_basis = tuple(unvec(v, dim) for v in null_vectors)
    logger.debug(f"Kernel of L♯ has dimension {len(kernel_basis)}")

    closed = True
    abelian = True
    for x, y in itertools.combinations(kernel_basis, 2):
        bracket = commutator(x, y)
        if hs_norm(bracket) > tols.tol_closure:
            abelian = False

        flat = vec(bracket)
        in_span = null_vectors.T @ (null_vectors.conj() @ flat)
        if np.linalg.norm(flat - in_span) > tols.tol_closure:
            closed = False

    return KernelReport(
        kernel_dim=len(kernel_basis),
        kernel_basis=kernel_basis,
        closed_under_commutators=closed,
        commutant_is_abelian=abelian,
    )


def surviving_observables(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    schedule: Sequence[float],
    tolerances: Optional[Tolerances] = None,
) -> Optional[tuple[Operator, ...]]:
    """
    Λ♯_∞(A_i) for every element of a basis

    Returns
    -------
    :
        The limits, or `None` if any of them does not exist
    """
    limits = []
    for label, element in zip(basis.labels, basis.elements):
        limit = weak_limit_observable(
            generator_adjoint,
            element,
            schedule,
            tolerances=tolerances,
            interior=basis.interior,
        )
        if isinstance(limit, DivergenceFlag):
            logger.debug(f"No weak limit for {label}: {limit}")
            return None

        limits.append(limit)

    return tuple(limits)


def image_algebra_is_abelian(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    schedule: Sequence[float],
    tolerances: Optional[Tolerances] = None,
) -> bool:
    """
    Whether the observables surviving t → ∞ commute with each other

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    basis
        Observables whose limits Λ♯_∞(A_i) span the image algebra

    schedule
        Schedule along which the weak limits are extrapolated

    tolerances
        Tolerances (`tol_closure` relative to the product of norms)

    Returns
    -------
    :
        `True` if all limits exist and commute.
        `False` if they do not commute or some limit does not exist.
    """
    tols = resolve_tolerances(tolerances)
    limits = surviving_observables(generator_adjoint, basis, schedule, tolerances=tols)
    if limits is None:
        return False

    for x, y in itertools.combinations(limits, 2):
        scale = max(hs_norm(x) * hs_norm(y), 1.0)
        bracket = basis.projected(commutator(x, y))
        if hs_norm(bracket) > tols.tol_closure * scale:
            return False

    return True
