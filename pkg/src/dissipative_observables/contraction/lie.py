"""
Lie-algebraic invariants of structure constants

All functions work on coefficient vectors with respect to the tensor's basis.
Rank decisions use singular values relative to the largest one.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.deformed.structure import StructureTensor, jacobi_residual

__all__ = [
    "bracket_closure",
    "center",
    "derived_algebra",
    "derived_series_terminates",
    "is_abelian_subalgebra",
    "jacobi_residual",
    "killing_form",
    "quotient_by_center",
    "real_form",
]


def killing_form(tensor: StructureTensor) -> npt.NDArray[np.complex128]:
    """
    Killing form K_ij = Tr(ad_i ad_j) = sum_mk C^m_ik C^k_jm

    Parameters
    ----------
    tensor
        Structure constants

    Returns
    -------
    :
        Symmetric n x n matrix
    """
    c = tensor.values

    return np.einsum("mik,kjm->ij", c, c)  # type: ignore[no-any-return]


def _real_if_possible(
    values: npt.NDArray[np.complex128],
) -> npt.NDArray[np.generic]:
    """Drop a vanishing imaginary part so that decompositions stay real"""
    if np.iscomplexobj(values) and not np.any(values.imag):
        return values.real  # type: ignore[no-any-return]

    return values


def _span(
    vectors: npt.NDArray[np.complex128], tol_kernel: float
) -> npt.NDArray[np.complex128]:
    """Orthonormal rows spanning the columns of `vectors`"""
    if vectors.size == 0:
        return np.zeros((0, vectors.shape[0]), dtype=np.complex128)

    u, s, _ = np.linalg.svd(_real_if_possible(vectors), full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((0, vectors.shape[0]), dtype=np.complex128)

    rank = int(np.sum(s > tol_kernel * s[0]))

    return u[:, :rank].T  # type: ignore[no-any-return]


def center(
    tensor: StructureTensor, tolerances: Optional[Tolerances] = None
) -> npt.NDArray[np.complex128]:
    """
    Center of the algebra

    The vectors v with sum_i v_i C^k_ij = 0 for all j, k.

    Parameters
    ----------
    tensor
        Structure constants

    tolerances
        Tolerances (`tol_kernel` is the relative singular value threshold)

    Returns
    -------
    :
        Orthonormal basis of the center, one vector per row
    """
    tols = resolve_tolerances(tolerances)
    n = tensor.n
    # rows run over (k, j), columns over i
    stacked = _real_if_possible(tensor.values.transpose(0, 2, 1).reshape(n * n, n))

    return scipy.linalg.null_space(stacked, rcond=tols.tol_kernel).T  # type: ignore[no-any-return]


def bracket_closure(
    tensor: StructureTensor,
    vectors: npt.NDArray[np.complex128],
    tolerances: Optional[Tolerances] = None,
) -> npt.NDArray[np.complex128]:
    """
    Span of all brackets of pairs of the given vectors

    Parameters
    ----------
    tensor
        Structure constants

    vectors
        Vectors, one per row

    tolerances
        Tolerances (`tol_kernel` is the relative singular value threshold)

    Returns
    -------
    :
        Orthonormal basis of span{[x, y]}, one vector per row
    """
    tols = resolve_tolerances(tolerances)
    brackets = np.einsum("kij,ai,bj->kab", tensor.values, vectors, vectors)

    return _span(brackets.reshape(tensor.n, -1), tols.tol_kernel)


def derived_algebra(
    tensor: StructureTensor, tolerances: Optional[Tolerances] = None
) -> npt.NDArray[np.complex128]:
    """
    Derived algebra [g, g]

    Returns
    -------
    :
        Orthonormal basis, one vector per row
    """
    return bracket_closure(
        tensor, np.eye(tensor.n, dtype=np.complex128), tolerances=tolerances
    )


def is_abelian_subalgebra(
    tensor: StructureTensor,
    vectors: npt.NDArray[np.complex128],
    tolerances: Optional[Tolerances] = None,
) -> bool:
    """
    Whether all brackets between the given vectors vanish
    """
    tols = resolve_tolerances(tolerances)
    brackets = np.einsum("kij,ai,bj->kab", tensor.values, vectors, vectors)
    scale = max(float(np.max(np.abs(tensor.values), initial=0.0)), 1.0)

    return bool(np.max(np.abs(brackets), initial=0.0) <= tols.tol_kernel * scale)


def derived_series_terminates(
    tensor: StructureTensor, tolerances: Optional[Tolerances] = None
) -> bool:
    """
    Whether the derived series reaches zero, i.e. whether the algebra is solvable
    """
    current = np.eye(tensor.n, dtype=np.complex128)
    while current.shape[0] > 0:
        following = bracket_closure(tensor, current, tolerances=tolerances)
        if following.shape[0] >= current.shape[0]:
            return False

        current = following

    return True


def quotient_by_center(
    tensor: StructureTensor, tolerances: Optional[Tolerances] = None
) -> Optional[StructureTensor]:
    """
    Quotient of the algebra by its center

    The center is an ideal, so the bracket is well-defined on the quotient.
    The quotient is expressed in an orthonormal basis of the complement
    of the center.
    If the center is trivial, `None` is returned.

    Parameters
    ----------
    tensor
        Structure constants

    tolerances
        Tolerances to use

    Returns
    -------
    :
        Structure constants of the quotient, `None` if the center is trivial
    """
    central = center(tensor, tolerances=tolerances)
    z = central.shape[0]
    if z == 0:
        return None

    complement = scipy.linalg.null_space(_real_if_possible(central.conj()))
    change = np.concatenate([complement, central.T], axis=1)
    n = tensor.n
    m = n - z

    transformed = np.einsum("rpq,pi,qj->rij", tensor.values, change, change)
    values = np.linalg.solve(change, transformed.reshape(n, n * n)).reshape(n, n, n)

    labels = [f"w{i}" for i in range(m)]

    return StructureTensor(
        values=values[:m, :m, :m],
        time=tensor.time,
        labels=labels,
        closure_residual=tensor.closure_residual,
        condition_estimate=tensor.condition_estimate,
    )


def real_form(
    tensor: StructureTensor, tolerances: Optional[Tolerances] = None
) -> Optional[StructureTensor]:
    """
    Real structure constants for the algebra, if they exist for a simple rescaling

    Brackets of Hermitian observables are anti-Hermitian,
    so structure constants in a Hermitian basis are typically purely imaginary.
    Rescaling every basis element by i multiplies the constants by i.
    We try the factors 1 and i and return the first real result.

    Parameters
    ----------
    tensor
        Structure constants

    tolerances
        Tolerances (`tol_kernel` relative to the largest entry)

    Returns
    -------
    :
        Real structure constants (stored as complex with zero imaginary part)
        or `None` if neither factor gives real constants
    """
    tols = resolve_tolerances(tolerances)
    scale = max(float(np.max(np.abs(tensor.values), initial=0.0)), 1.0)
    for factor in (1.0, 1j):
        candidate = factor * tensor.values
        if np.max(np.abs(candidate.imag), initial=0.0) <= tols.tol_kernel * scale:
            return StructureTensor(
                values=candidate.real.astype(np.complex128),
                time=tensor.time,
                labels=tensor.labels,
                closure_residual=tensor.closure_residual,
                condition_estimate=tensor.condition_estimate,
            )

    return None
