"""
Time-dependent structure constants of the deformed commutator
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
import pandas as pd
import scipy.linalg
from attrs import field, frozen
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.deformed.context import DeformedAlgebraContext
from dissipative_observables.exceptions import ClosureError, IllConditionedError
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    apply,
    propagator,
)
from dissipative_observables.operators.bases import (
    OperatorBasis,
    expand_with_residuals,
)
from dissipative_observables.operators.core import Operator, commutator, hs_norm
from dissipative_observables.serialisation import (
    array_from_pairs,
    array_to_pairs,
    time_from_json,
    time_to_json,
)


def _as_tensor(value: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    res = np.array(value, dtype=np.complex128)
    if res.ndim != 3 or len(set(res.shape)) != 1:  # noqa: PLR2004
        msg = f"Structure constants must have shape (n, n, n). Received {res.shape=}"
        raise ValueError(msg)

    res.setflags(write=False)

    return res


@frozen(eq=False)
class StructureTensor:
    """
    Structure constants C^k_ij of a bracket in a basis

    [A_i, A_j] = sum_k C^k_ij A_k, stored with index order (k, i, j).
    """

    values: npt.NDArray[np.complex128] = field(converter=_as_tensor)
    """C^k_ij, shape (n, n, n), index order (k, i, j)"""

    time: float
    """Time at which the bracket was evaluated (`math.inf` for limits)"""

    labels: tuple[str, ...] = field(converter=tuple)
    """Labels of the basis elements"""

    closure_residual: float = 0.0
    """Largest relative out-of-span component met while computing the constants"""

    condition_estimate: float = 1.0
    """Condition estimate of the map inverted while computing the constants"""

    @labels.validator
    def _labels_validator(self, attribute: object, value: tuple[str, ...]) -> None:
        if len(value) != self.values.shape[0]:
            msg = f"Received {len(value)} labels for n={self.values.shape[0]}"
            raise ValueError(msg)

    @property
    def n(self) -> int:
        """Basis size"""
        return self.values.shape[0]

    def bracket(self, x: npt.ArrayLike, y: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """
        Bracket of two coefficient vectors, [x, y]^k = sum_ij C^k_ij x_i y_j
        """
        return np.einsum(  # type: ignore[no-any-return]
            "kij,i,j->k",
            self.values,
            np.asarray(x, dtype=np.complex128),
            np.asarray(y, dtype=np.complex128),
        )

    def antisymmetry_residual(self) -> float:
        """
        max |C^k_ij + C^k_ji|
        """
        return float(np.max(np.abs(self.values + self.values.transpose(0, 2, 1))))

    def to_json_dict(self) -> dict[str, Any]:
        """
        Convert to raw JSON data

        The layout is `{"n", "time", "labels", "C"}`,
        with `C` nested as [k][i][j] lists of [re, im] pairs
        and infinite times written as `"inf"`.
        """
        return {
            "n": self.n,
            "time": time_to_json(self.time),
            "labels": list(self.labels),
            "C": array_to_pairs(self.values),
        }

    @classmethod
    def from_json_dict(cls, raw: dict[str, Any]) -> StructureTensor:
        """
        Initialise from raw JSON data

        Inverse of [to_json_dict][dissipative_observables.deformed.structure.StructureTensor.to_json_dict].
        """  # noqa: E501
        values = array_from_pairs(raw["C"])
        labels = raw.get("labels", [str(i) for i in range(values.shape[0])])
        if values.shape[0] != raw["n"]:
            msg = f"{raw['n']=} but C has shape {values.shape}"
            raise ValueError(msg)

        return cls(values=values, time=time_from_json(raw["time"]), labels=labels)

    def to_frame(self) -> pd.DataFrame:
        """
        Long-form table with columns `time, k, i, j, re, im`
        """
        n = self.n
        k, i, j = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")

        return pd.DataFrame(
            {
                "time": self.time,
                "k": k.ravel(),
                "i": i.ravel(),
                "j": j.ravel(),
                "re": self.values.real.ravel(),
                "im": self.values.imag.ravel(),
            }
        )


def tensors_to_frame(tensors: Iterable[StructureTensor]) -> pd.DataFrame:
    """
    Stack the long-form tables of several tensors (e.g. along a schedule)
    """
    return pd.concat([t.to_frame() for t in tensors], ignore_index=True)


def tensors_from_frame(
    frame: pd.DataFrame, labels: Sequence[str]
) -> tuple[StructureTensor, ...]:
    """
    Inverse of [tensors_to_frame][dissipative_observables.deformed.structure.tensors_to_frame]
    """  # noqa: E501
    n = len(labels)
    res = []
    for time, group in frame.groupby("time", sort=False):
        values = np.zeros((n, n, n), dtype=np.complex128)
        values[group["k"], group["i"], group["j"]] = (
            group["re"].to_numpy() + 1j * group["im"].to_numpy()
        )
        res.append(StructureTensor(values=values, time=float(time), labels=labels))

    return tuple(res)


def _relative_residuals(
    residuals: npt.NDArray[np.float64], scales: npt.NDArray[np.float64]
) -> npt.NDArray[np.float64]:
    safe_scales = np.where(scales > 0, scales, 1.0)

    return residuals / safe_scales  # type: ignore[no-any-return]


def _expand_closed(
    operators: Sequence[Operator],
    basis: OperatorBasis,
    labels: Sequence[tuple[str, ...]],
    scales: npt.NDArray[np.float64],
    time: float,
    tolerances: Tolerances,
) -> tuple[npt.NDArray[np.complex128], float]:
    """
    Expand operators which must lie in the span of the basis

    Raises
    ------
    ClosureError
        One of the operators leaves the span
    """
    coefficients, residuals = expand_with_residuals(operators, basis)
    relative = _relative_residuals(residuals, scales)
    worst = int(np.argmax(relative)) if relative.size else 0
    if relative.size and relative[worst] > tolerances.tol_closure:
        raise ClosureError(
            labels=labels[worst], residual=float(residuals[worst]), time=time
        )

    return coefficients, float(np.max(relative, initial=0.0))


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _tensor_from_pair_coefficients(
    n: int, coefficients: npt.NDArray[np.complex128]
) -> npt.NDArray[np.complex128]:
    values = np.zeros((n, n, n), dtype=np.complex128)
    for (i, j), coeffs in zip(_pairs(n), coefficients):
        values[:, i, j] = coeffs
        values[:, j, i] = -coeffs

    return values


def ordinary_structure_constants(
    basis: OperatorBasis, tolerances: Optional[Tolerances] = None
) -> StructureTensor:
    """
    Structure constants of the ordinary commutator

    Raises
    ------
    ClosureError
        A commutator of basis elements leaves the span of the basis
    """
    tols = resolve_tolerances(tolerances)
    elements = basis.elements
    pairs = _pairs(basis.size)
    brackets = [commutator(elements[i], elements[j]) for i, j in pairs]
    scales = np.array(
        [
            max(
                hs_norm(basis.projected(b)),
                hs_norm(basis.projected(elements[i]))
                * hs_norm(basis.projected(elements[j])),
            )
            for b, (i, j) in zip(brackets, pairs)
        ]
    )
    coefficients, closure = _expand_closed(
        brackets,
        basis,
        labels=[(basis.labels[i], basis.labels[j]) for i, j in pairs],
        scales=scales,
        time=0.0,
        tolerances=tols,
    )

    return StructureTensor(
        values=_tensor_from_pair_coefficients(basis.size, coefficients),
        time=0.0,
        labels=basis.labels,
        closure_residual=closure,
    )


def restricted_adjoint(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    time: float,
    tolerances: Optional[Tolerances] = None,
    forward: Optional[Superoperator] = None,
) -> tuple[npt.NDArray[np.complex128], float]:
    """
    Matrix of Λ♯_t restricted to the span of a basis

    Λ♯_t(A_j) = sum_k R_kj A_k

    If L♯ maps the span into itself, R = exp(t G) with G the matrix of L♯
    on the span (see
    [restricted_generator][dissipative_observables.deformed.structure.restricted_generator]).
    This keeps the relative precision of strongly damped elements,
    which is lost when their tiny images are expanded.
    Otherwise the images of the basis elements under Λ♯_t are expanded.

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    basis
        Basis whose span must be mapped into itself

    time
        Time t

    tolerances
        Tolerances to use (`tol_closure` bounds the out-of-span part)

    forward
        Λ♯_t, if it has already been computed
        (only used if L♯ does not map the span into itself)

    Returns
    -------
    :
        R, shape (n, n), and the largest relative out-of-span residual

    Raises
    ------
    ClosureError
        Λ♯_t does not map the span of the basis into itself
    """  # noqa: E501
    tols = resolve_tolerances(tolerances)
    try:
        generator_on_span, closure = _restricted_generator_with_closure(
            generator_adjoint, basis, tols
        )
    except ClosureError:
        logger.debug("L♯ leaves the basis span, expanding the images of Λ♯_t")
    else:
        return scipy.linalg.expm(time * generator_on_span), closure

    if forward is None:
        forward = propagator(generator_adjoint, time)

    images = [apply(forward, el) for el in basis.elements]
    scales = np.array([hs_norm(basis.projected(img)) for img in images])
    coefficients, closure = _expand_closed(
        images,
        basis,
        labels=[(label,) for label in basis.labels],
        scales=scales,
        time=time,
        tolerances=tols,
    )

    return coefficients.T, closure


def _restricted_generator_with_closure(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    tolerances: Tolerances,
) -> tuple[npt.NDArray[np.complex128], float]:
    images = [apply(generator_adjoint, el) for el in basis.elements]
    scales = np.array(
        [
            max(hs_norm(basis.projected(img)), hs_norm(basis.projected(el)))
            for img, el in zip(images, basis.elements)
        ]
    )
    coefficients, closure = _expand_closed(
        images,
        basis,
        labels=[(label,) for label in basis.labels],
        scales=scales,
        time=0.0,
        tolerances=tolerances,
    )

    return coefficients.T, closure


def restricted_generator(
    generator_adjoint: Superoperator,
    basis: OperatorBasis,
    tolerances: Optional[Tolerances] = None,
) -> npt.NDArray[np.complex128]:
    """
    Matrix of L♯ restricted to the span of a basis

    L♯(A_j) = sum_k G_kj A_k

    Raises
    ------
    ClosureError
        L♯ does not map the span of the basis into itself
    """
    generator_on_span, _ = _restricted_generator_with_closure(
        generator_adjoint, basis, resolve_tolerances(tolerances)
    )

    return generator_on_span


def _structure_constants_full_inverse(
    ctx: DeformedAlgebraContext, tolerances: Tolerances
) -> StructureTensor:
    basis = ctx.basis
    inverse = ctx.require_inverse()
    images = [apply(ctx.forward, el) for el in basis.elements]
    pairs = _pairs(basis.size)
    brackets = [apply(inverse, commutator(images[i], images[j])) for i, j in pairs]
    scales = np.array(
        [
            max(
                hs_norm(basis.projected(b)),
                hs_norm(basis.projected(basis.elements[i]))
                * hs_norm(basis.projected(basis.elements[j])),
            )
            for b, (i, j) in zip(brackets, pairs)
        ]
    )
    coefficients, closure = _expand_closed(
        brackets,
        basis,
        labels=[(basis.labels[i], basis.labels[j]) for i, j in pairs],
        scales=scales,
        time=ctx.time,
        tolerances=tolerances,
    )

    return StructureTensor(
        values=_tensor_from_pair_coefficients(basis.size, coefficients),
        time=ctx.time,
        labels=basis.labels,
        closure_residual=closure,
        condition_estimate=ctx.condition_estimate,
    )


def _structure_constants_restricted(
    ctx: DeformedAlgebraContext, tolerances: Tolerances
) -> StructureTensor:
    basis = ctx.basis
    n = basis.size
    initial = ordinary_structure_constants(basis, tolerances=tolerances)
    restricted, closure = restricted_adjoint(
        ctx.generator_adjoint,
        basis,
        ctx.time,
        tolerances=tolerances,
        forward=ctx.forward,
    )
    condition_estimate = float(np.linalg.cond(restricted))
    if not condition_estimate <= tolerances.cond_max:
        raise IllConditionedError(
            condition_estimate=condition_estimate,
            time=ctx.time,
            cond_max=tolerances.cond_max,
        )

    # C(t)^k_ij = sum (R^-1)_kr C(0)^r_pq R_pi R_qj
    transformed = np.einsum(
        "rpq,pi,qj->rij", initial.values, restricted, restricted
    ).reshape(n, n * n)
    values = np.linalg.solve(restricted, transformed).reshape(n, n, n)

    return StructureTensor(
        values=values,
        time=ctx.time,
        labels=basis.labels,
        closure_residual=max(closure, initial.closure_residual),
        condition_estimate=max(condition_estimate, 1.0),
    )


def structure_constants(
    ctx: DeformedAlgebraContext,
    on_span: bool = False,
) -> StructureTensor:
    """
    Structure constants of the deformed commutator at the context's time

    [A_i, A_j]_t = sum_k C^k_ij(t) A_k

    If Λ♯_t can be inverted within `cond_max`,
    the deformed commutators of all basis pairs are computed directly and expanded.
    Otherwise the equivalent form on the span of the basis,
    C(t)^k_ij = sum (R⁻¹)_kr C(0)^r_pq R_pi R_qj with R the matrix of Λ♯_t
    on the span (see
    [restricted_adjoint][dissipative_observables.deformed.structure.restricted_adjoint]),
    is used.
    This requires the span to be mapped into itself
    and R to be invertible within `cond_max`.

    Parameters
    ----------
    ctx
        Context at which to evaluate

    on_span
        Use the form on the span of the basis even if Λ♯_t can be inverted.
        The two agree up to roundoff, but the roundoff of the full inverse
        grows with the condition number of Λ♯_t
        while that of the span form only grows with the condition number of R.

    Returns
    -------
    :
        Structure constants

    Raises
    ------
    ClosureError
        A deformed commutator (or propagated basis element) leaves the basis span

    IllConditionedError
        Neither Λ♯_t nor its restriction to the basis span can be inverted
        within `cond_max`
    """  # noqa: E501
    tols = resolve_tolerances(ctx.tolerances)
    if ctx.inverse is not None and not on_span:
        logger.debug(f"Structure constants at t={ctx.time} via the full inverse")
        return _structure_constants_full_inverse(ctx, tols)

    logger.debug(f"Structure constants at t={ctx.time} via the basis span")
    return _structure_constants_restricted(ctx, tols)


def jacobi_residual(tensor: StructureTensor) -> float:
    """
    Largest violation of the Jacobi identity over basis triples

    For each triple (i, j, k) this is the norm (over m) of
    sum_l (C^l_ij C^m_lk + C^l_jk C^m_li + C^l_ki C^m_lj).

    Parameters
    ----------
    tensor
        Structure constants

    Returns
    -------
    :
        Largest residual norm
    """
    c = tensor.values
    # first[m, i, j, k] = sum_l C^l_ij C^m_lk
    first = np.einsum("lij,mlk->mijk", c, c)
    cyclic = (
        first + np.transpose(first, (0, 3, 1, 2)) + np.transpose(first, (0, 2, 3, 1))
    )

    return float(np.max(np.linalg.norm(cyclic, axis=0), initial=0.0))


def is_finite_time(tensor: StructureTensor) -> bool:
    """Whether the tensor was evaluated at a finite time"""
    return math.isfinite(tensor.time)
