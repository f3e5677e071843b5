"""
Classification of low-dimensional Lie algebras from their structure constants

Only basis-independent invariants are used:
the signature of the Killing form,
the dimensions of the center and of the derived algebra
and whether the derived algebra is abelian.
This is enough to tell apart every algebra reached by the contractions
of the bundled models.
Algebras with a center are classified through their quotient by the center.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
from attrs import field, frozen
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.contraction.lie import (
    center,
    derived_algebra,
    derived_series_terminates,
    is_abelian_subalgebra,
    jacobi_residual,
    killing_form,
    quotient_by_center,
    real_form,
)
from dissipative_observables.deformed.limits import LimitReport
from dissipative_observables.deformed.structure import StructureTensor

MAX_CLASSIFIED_DIM: int = 4
"""Largest dimension (after removing the center) we attempt to classify"""


class LieAlgebraLabel(str, Enum):
    """
    Labels of the algebras we can recognise
    """

    abelian = "abelian"
    heisenberg = "heisenberg"
    e2 = "e2"
    """Euclidean algebra of the plane"""

    iso11 = "iso11"
    """Poincaré algebra in 1+1 dimensions"""

    su2_so3 = "su2_so3"
    sl2r_so21 = "sl2r_so21"
    solvable_other = "solvable_other"
    unclassified = "unclassified"


@frozen
class LieClassification:
    """
    Classification of a Lie algebra
    """

    label: LieAlgebraLabel = field(converter=LieAlgebraLabel)
    """Recognised algebra"""

    killing_signature: tuple[int, int, int] = field(converter=tuple)
    """(positive, negative, zero) eigenvalue counts of the Killing form"""

    center_dim: int
    """Dimension of the center"""

    derived_dim: int
    """Dimension of the derived algebra [g, g]"""

    diagnostics: dict[str, Any] = field(factory=dict)
    """Additional information, e.g. why no label could be found"""

    def to_json_dict(self) -> dict[str, Any]:
        """
        Convert to raw JSON data
        """
        return {
            "label": self.label.value,
            "killing_signature": list(self.killing_signature),
            "center_dim": self.center_dim,
            "derived_dim": self.derived_dim,
            "diagnostics": self.diagnostics,
        }


def killing_signature(
    tensor: StructureTensor, tolerances: Optional[Tolerances] = None
) -> tuple[tuple[int, int, int], bool]:
    """
    Signature of the Killing form

    Parameters
    ----------
    tensor
        Structure constants

    tolerances
        Tolerances (`tol_kernel` relative to the largest eigenvalue magnitude)

    Returns
    -------
    :
        (positive, negative, zero) counts
        and whether the Killing form was real.
        For a complex Killing form only the rank is meaningful,
        in which case all non-zero directions are counted as positive.
    """
    tols = resolve_tolerances(tolerances)
    killing = killing_form(tensor)
    scale = float(np.max(np.abs(killing), initial=0.0))
    if scale == 0.0:
        return (0, 0, tensor.n), True

    if np.max(np.abs(killing.imag)) <= tols.tol_kernel * scale:
        eigenvalues = np.linalg.eigvalsh(killing.real)
        threshold = tols.tol_kernel * np.max(np.abs(eigenvalues))
        n_pos = int(np.sum(eigenvalues > threshold))
        n_neg = int(np.sum(eigenvalues < -threshold))

        return (n_pos, n_neg, tensor.n - n_pos - n_neg), True

    singular_values = np.linalg.svd(killing, compute_uv=False)
    rank = int(np.sum(singular_values > tols.tol_kernel * singular_values[0]))

    return (rank, 0, tensor.n - rank), False


def _classify_three_dimensional(
    tensor: StructureTensor,
    signature: tuple[int, int, int],
    is_real: bool,
    derived: npt.NDArray[np.complex128],
    tolerances: Tolerances,
) -> tuple[LieAlgebraLabel, dict[str, Any]]:
    n_pos, n_neg, n_zero = signature
    if n_zero == 0:
        if not is_real:
            return LieAlgebraLabel.unclassified, {
                "reason": "simple algebra without a real form, "
                "su(2) and sl(2, R) cannot be told apart"
            }

        if n_neg == tensor.n:
            return LieAlgebraLabel.su2_so3, {}

        return LieAlgebraLabel.sl2r_so21, {}

    if (
        n_pos + n_neg == 1
        and derived.shape[0] == 2  # noqa: PLR2004
        and is_abelian_subalgebra(tensor, derived, tolerances=tolerances)
    ):
        if not is_real:
            return LieAlgebraLabel.solvable_other, {
                "reason": "no real form, e2 and iso11 coincide over the complex numbers"
            }

        if n_neg == 1:
            return LieAlgebraLabel.e2, {}

        return LieAlgebraLabel.iso11, {}

    if derived_series_terminates(tensor, tolerances=tolerances):
        return LieAlgebraLabel.solvable_other, {}

    return LieAlgebraLabel.unclassified, {"reason": "not solvable and not simple"}


def _is_heisenberg(
    n: int,
    center_dim: int,
    derived: npt.NDArray[np.complex128],
    central: npt.NDArray[np.complex128],
) -> bool:
    if not (derived.shape[0] == 1 and center_dim >= 1 and n - center_dim == 2):  # noqa: PLR2004
        return False

    # derived algebra inside the center
    combined = np.concatenate([central, derived], axis=0)

    return bool(np.linalg.matrix_rank(combined) == center_dim)


def classify(
    tensor: StructureTensor, tolerances: Optional[Tolerances] = None
) -> LieClassification:
    """
    Classify a Lie algebra given by its structure constants

    Parameters
    ----------
    tensor
        Structure constants

    tolerances
        Tolerances to use.
        `tol_kernel` drives the rank decisions,
        `tol_limit` bounds the accepted Jacobi residual.

    Returns
    -------
    :
        Classification.
        Tensors we cannot classify (including those violating the Jacobi identity)
        are labelled `unclassified` with the reason in the diagnostics.
    """
    tols = resolve_tolerances(tolerances)
    n = tensor.n
    scale = float(np.max(np.abs(tensor.values), initial=0.0))
    if scale <= tols.tol_kernel:
        return LieClassification(
            label=LieAlgebraLabel.abelian,
            killing_signature=(0, 0, n),
            center_dim=n,
            derived_dim=0,
        )

    jacobi = jacobi_residual(tensor)
    if jacobi > tols.tol_limit * max(scale, 1.0) ** 2:
        logger.debug(f"Jacobi identity violated ({jacobi=:.3e})")
        return LieClassification(
            label=LieAlgebraLabel.unclassified,
            killing_signature=killing_signature(tensor, tols)[0],
            center_dim=0,
            derived_dim=0,
            diagnostics={
                "reason": "Jacobi identity violated",
                "jacobi_residual": jacobi,
            },
        )

    real = real_form(tensor, tols)
    working = real if real is not None else tensor

    signature, is_real = killing_signature(working, tols)
    central = center(working, tols)
    derived = derived_algebra(working, tols)
    invariants = {
        "killing_signature": signature,
        "center_dim": central.shape[0],
        "derived_dim": derived.shape[0],
    }
    diagnostics: dict[str, Any] = {"real_form": real is not None}

    if _is_heisenberg(n, central.shape[0], derived, central):
        return LieClassification(
            label=LieAlgebraLabel.heisenberg, diagnostics=diagnostics, **invariants
        )

    quotient = quotient_by_center(working, tols) if central.shape[0] < n else None
    if quotient is not None:
        quotient_classification = classify(quotient, tols)
        diagnostics["quotient"] = quotient_classification.to_json_dict()
        label = quotient_classification.label
        if label == LieAlgebraLabel.abelian:
            # non-abelian but abelian modulo the center: nilpotent
            label = LieAlgebraLabel.solvable_other

        return LieClassification(label=label, diagnostics=diagnostics, **invariants)

    if n == 3:  # noqa: PLR2004
        label, extra = _classify_three_dimensional(
            working, signature, is_real, derived, tols
        )
        diagnostics.update(extra)

        return LieClassification(label=label, diagnostics=diagnostics, **invariants)

    if n <= MAX_CLASSIFIED_DIM and derived_series_terminates(working, tols):
        return LieClassification(
            label=LieAlgebraLabel.solvable_other, diagnostics=diagnostics, **invariants
        )

    diagnostics["reason"] = f"no rule for dimension {n} without center"

    return LieClassification(
        label=LieAlgebraLabel.unclassified, diagnostics=diagnostics, **invariants
    )


def classify_limit(
    report: LimitReport, tolerances: Optional[Tolerances] = None
) -> LieClassification:
    """
    Classify the contracted algebra described by a limit report

    A limit that did not converge is a finding rather than a failure:
    it is labelled `unclassified`, with the divergence in the diagnostics.

    Parameters
    ----------
    report
        Outcome of the limit extraction

    tolerances
        Tolerances to use

    Returns
    -------
    :
        Classification
    """
    if report.converged and report.limit is not None:
        return classify(report.limit, tolerances)

    n = report.tensors[0].n if report.tensors else 0
    logger.debug("Limit did not converge, the contraction is unclassified")

    return LieClassification(
        label=LieAlgebraLabel.unclassified,
        killing_signature=(0, 0, n),
        center_dim=0,
        derived_dim=0,
        diagnostics={
            "reason": "structure constants did not converge",
            "final_delta": report.final_delta,
            "divergent_entries": [
                {"index": list(entry.index), "growth_rate": entry.growth_rate}
                for entry in report.divergent_entries
            ],
        },
    )
