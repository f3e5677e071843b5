"""
Analysis of contracted algebras and of the observables that survive dissipation
"""

from __future__ import annotations

from dissipative_observables.contraction.classification import (
    LieAlgebraLabel,
    LieClassification,
    classify,
    classify_limit,
    killing_signature,
)
from dissipative_observables.contraction.kernel import (
    KernelReport,
    image_algebra_is_abelian,
    kernel_of_adjoint,
)
from dissipative_observables.contraction.lie import (
    center,
    derived_algebra,
    jacobi_residual,
    killing_form,
    quotient_by_center,
    real_form,
)

__all__ = [
    "KernelReport",
    "LieAlgebraLabel",
    "LieClassification",
    "center",
    "classify",
    "classify_limit",
    "derived_algebra",
    "image_algebra_is_abelian",
    "jacobi_residual",
    "kernel_of_adjoint",
    "killing_form",
    "killing_signature",
    "quotient_by_center",
    "real_form",
]
