"""
Worked examples: generators with closed-form adjoint actions
"""

from __future__ import annotations

from dissipative_observables.models.discrete_position import (
    discrete_position_decoherence,
    schwinger_relation_residual,
    unitarity_defect,
)
from dissipative_observables.models.instance import AdjointOracle, ModelInstance
from dissipative_observables.models.oscillator import (
    damped_oscillator,
    phase_damped_oscillator,
)
from dissipative_observables.models.pure_decoherence import (
    DecoherenceMatrix,
    decoherence_matrix,
    decoherence_unitaries,
    pure_decoherence_d_level,
)
from dissipative_observables.models.qubit import (
    QubitHamiltonianAxis,
    asymptotic_state,
    qubit_phase_damping,
    qubit_with_hamiltonian,
)
from dissipative_observables.models.registry import MODEL_REGISTRY, build_model

__all__ = [
    "MODEL_REGISTRY",
    "AdjointOracle",
    "DecoherenceMatrix",
    "ModelInstance",
    "QubitHamiltonianAxis",
    "asymptotic_state",
    "build_model",
    "damped_oscillator",
    "decoherence_matrix",
    "decoherence_unitaries",
    "discrete_position_decoherence",
    "phase_damped_oscillator",
    "pure_decoherence_d_level",
    "qubit_phase_damping",
    "qubit_with_hamiltonian",
    "schwinger_relation_residual",
    "unitarity_defect",
]
