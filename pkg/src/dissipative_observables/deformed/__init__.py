"""
The time-deformed product, its structure constants and their t → ∞ limits
"""

from __future__ import annotations

from dissipative_observables.deformed.context import (
    DeformedAlgebraContext,
    deformed_algebra_context,
)
from dissipative_observables.deformed.limits import (
    DivergenceFlag,
    DivergentEntry,
    LimitReport,
    asymptotic_structure_constants,
    product_limit,
    structure_constants_along,
    weak_limit_observable,
)
from dissipative_observables.deformed.product import (
    deformed_commutator,
    deformed_product,
)
from dissipative_observables.deformed.schedule import (
    default_schedule,
    geometric_schedule,
    limit_schedule,
    validate_schedule,
)
from dissipative_observables.deformed.structure import (
    StructureTensor,
    jacobi_residual,
    restricted_adjoint,
    structure_constants,
)

__all__ = [
    "DeformedAlgebraContext",
    "DivergenceFlag",
    "DivergentEntry",
    "LimitReport",
    "StructureTensor",
    "asymptotic_structure_constants",
    "default_schedule",
    "deformed_algebra_context",
    "deformed_commutator",
    "deformed_product",
    "geometric_schedule",
    "jacobi_residual",
    "limit_schedule",
    "product_limit",
    "restricted_adjoint",
    "structure_constants",
    "structure_constants_along",
    "validate_schedule",
    "weak_limit_observable",
]
