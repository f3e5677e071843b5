"""
Dense operator arithmetic and Hilbert-Schmidt geometry

Operators are square, complex `numpy` arrays.
Functions here never modify their inputs.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
import numpy.typing as npt
from typing_extensions import TypeAlias

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.exceptions import DimensionError

Operator: TypeAlias = npt.NDArray[np.complex128]
"""A dense, square, complex matrix (a state or an observable)"""


def as_operator(value: npt.ArrayLike) -> Operator:
    """
    Convert to an operator, checking shape and finiteness

    Parameters
    ----------
    value
        Array-like to convert

    Returns
    -------
    :
        Complex, read-only copy of `value`

    Raises
    ------
    ValueError
        `value` is not a square matrix or contains NaN/Inf
    """
    res = np.array(value, dtype=np.complex128)
    if res.ndim != 2 or res.shape[0] != res.shape[1] or res.shape[0] < 1:  # noqa: PLR2004
        msg = f"Operators must be non-empty square matrices. Received {res.shape=}"
        raise ValueError(msg)

    if not np.all(np.isfinite(res)):
        msg = "Operators must only contain finite values"
        raise ValueError(msg)

    res.setflags(write=False)

    return res


def check_same_dim(operation: str, *operators: npt.NDArray[np.generic]) -> int:
    """
    Check that all operators share a dimension

    Parameters
    ----------
    operation
        Name of the operation (used in the error message)

    *operators
        Operators to check

    Returns
    -------
    :
        The shared dimension

    Raises
    ------
    DimensionError
        The operators do not all have the same dimension
    """
    dims = [op.shape[0] for op in operators]
    if len(set(dims)) != 1:
        raise DimensionError(operation, dims)

    return dims[0]


def hs_inner(a: Operator, b: Operator) -> complex:
    """
    Hilbert-Schmidt inner product Tr(A† B)

    Parameters
    ----------
    a
        First (conjugated) argument

    b
        Second argument

    Returns
    -------
    :
        Tr(A† B)

    Raises
    ------
    DimensionError
        `a` and `b` have different dimensions
    """
    check_same_dim("hs_inner", a, b)

    return complex(np.vdot(a, b))


def hs_norm(a: Operator) -> float:
    """
    Hilbert-Schmidt (Frobenius) norm
    """
    return float(np.linalg.norm(a))


def commutator(a: Operator, b: Operator) -> Operator:
    """
    Commutator AB - BA

    Parameters
    ----------
    a
        First operator

    b
        Second operator

    Returns
    -------
    :
        AB - BA

    Raises
    ------
    DimensionError
        `a` and `b` have different dimensions
    """
    check_same_dim("commutator", a, b)

    return a @ b - b @ a  # type: ignore[no-any-return]


def anticommutator(a: Operator, b: Operator) -> Operator:
    """
    Anticommutator AB + BA
    """
    check_same_dim("anticommutator", a, b)

    return a @ b + b @ a  # type: ignore[no-any-return]


def dagger(a: Operator) -> Operator:
    """
    Conjugate transpose
    """
    return a.conj().T  # type: ignore[no-any-return]


def max_abs(a: npt.NDArray[np.generic]) -> float:
    """
    Max-entry norm (zero for empty arrays)
    """
    if a.size == 0:
        return 0.0

    return float(np.max(np.abs(a)))


def is_hermitian(a: Operator, tolerances: Optional[Tolerances] = None) -> bool:
    """
    Whether an operator is Hermitian within `tol_herm` (max-entry norm)
    """
    tols = resolve_tolerances(tolerances)

    return max_abs(a - dagger(a)) <= tols.tol_herm


def project_interior(a: Operator, n_levels: Optional[int]) -> Operator:
    """
    Keep only the leading `n_levels` x `n_levels` block of an operator

    Used for truncated Fock spaces,
    where matrix elements near the cut-off are corrupted by the truncation.

    Parameters
    ----------
    a
        Operator to project

    n_levels
        Number of leading levels to keep. If `None`, `a` is returned unchanged.

    Returns
    -------
    :
        Projected operator, same shape as `a`
    """
    if n_levels is None:
        return a

    res = np.zeros_like(a)
    res[:n_levels, :n_levels] = a[:n_levels, :n_levels]

    return res
