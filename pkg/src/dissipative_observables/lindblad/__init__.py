"""
Lindblad generators, their adjoints and propagators
"""

from __future__ import annotations

from dissipative_observables.lindblad.cptp import CptpReport, choi_matrix, verify_cptp
from dissipative_observables.lindblad.evolution import (
    ObservableEvolution,
    evolve_observable,
)
from dissipative_observables.lindblad.spec import (
    JumpOperator,
    LindbladSpec,
    adjoint_generator_from_spec,
    build_generator,
)
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    adjoint_generator,
    apply,
    compose,
    identity_superoperator,
    inverse_propagator,
    propagator,
    unvec,
    vec,
)

__all__ = [
    "CptpReport",
    "JumpOperator",
    "LindbladSpec",
    "ObservableEvolution",
    "Superoperator",
    "adjoint_generator",
    "adjoint_generator_from_spec",
    "apply",
    "build_generator",
    "choi_matrix",
    "compose",
    "evolve_observable",
    "identity_superoperator",
    "inverse_propagator",
    "propagator",
    "unvec",
    "vec",
    "verify_cptp",
]
