"""
Registry of the bundled models

Each entry knows which command-line overrides it accepts
(`gamma`, `dim`, `rates`, `omega`).
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any, Callable, Optional

from attrs import frozen

from dissipative_observables.exceptions import SpecError
from dissipative_observables.models.discrete_position import (
    discrete_position_decoherence,
)
from dissipative_observables.models.instance import ModelInstance
from dissipative_observables.models.oscillator import (
    damped_oscillator,
    phase_damped_oscillator,
)
from dissipative_observables.models.pure_decoherence import pure_decoherence_d_level
from dissipative_observables.models.qubit import (
    QubitHamiltonianAxis,
    qubit_phase_damping,
    qubit_with_hamiltonian,
)

OVERRIDE_NAMES: tuple[str, ...] = ("gamma", "dim", "rates", "omega")
"""Overrides that can be passed to [build_model][dissipative_observables.models.registry.build_model]"""  # noqa: E501


@frozen
class ModelEntry:
    """
    Registered model
    """

    name: str
    """Registry name"""

    description: str
    """One-line description"""

    build: Callable[..., ModelInstance]
    """Factory, called with the supported overrides as keyword arguments"""

    overrides: tuple[str, ...]
    """Overrides the factory accepts"""


def _qubit_h3(gamma: float = 1.0, omega: float = 1.0) -> ModelInstance:
    return qubit_with_hamiltonian(
        gamma=gamma, omega=omega, axis=QubitHamiltonianAxis.x3
    )


def _qubit_h1(gamma: float = 1.0, omega: float = 1.0) -> ModelInstance:
    return qubit_with_hamiltonian(
        gamma=gamma, omega=omega, axis=QubitHamiltonianAxis.x1
    )


def _damped(
    gamma: float = 1.0, dim: Optional[int] = None, omega: float = 0.0
) -> ModelInstance:
    if dim is None:
        return damped_oscillator(gamma=gamma, omega=omega)

    return damped_oscillator(gamma=gamma, n_max=dim - 1, omega=omega)


def _phase_damped(
    gamma: float = 1.0, dim: Optional[int] = None, omega: float = 0.0
) -> ModelInstance:
    if dim is None:
        return phase_damped_oscillator(gamma=gamma, omega=omega)

    return phase_damped_oscillator(gamma=gamma, n_max=dim - 1, omega=omega)


def _discrete_position(gamma: float = 1.0, dim: Optional[int] = None) -> ModelInstance:
    if dim is None:
        return discrete_position_decoherence(gamma=gamma)

    return discrete_position_decoherence(gamma=gamma, d=dim)


def _pure_decoherence(
    gamma: Optional[float] = None,
    dim: Optional[int] = None,
    rates: Optional[Sequence[float]] = None,
) -> ModelInstance:
    if rates is not None:
        if dim is not None and dim != len(rates) + 1:
            msg = f"{len(rates)} rates imply dim={len(rates) + 1}, not {dim}"
            raise SpecError(msg)

        return pure_decoherence_d_level(gammas=rates)

    if gamma is None and dim is None:
        return pure_decoherence_d_level()

    d = 3 if dim is None else dim
    rate = 1.0 if gamma is None else gamma

    return pure_decoherence_d_level(gammas=[rate] * (d - 1))


MODEL_REGISTRY: dict[str, ModelEntry] = {
    entry.name: entry
    for entry in (
        ModelEntry(
            name="qubit-dephasing",
            description="Qubit phase damping, contracts su(2) to e(2)",
            build=qubit_phase_damping,
            overrides=("gamma",),
        ),
        ModelEntry(
            name="qubit-dephasing-h3",
            description="Qubit phase damping with H = Ω σ3",
            build=_qubit_h3,
            overrides=("gamma", "omega"),
        ),
        ModelEntry(
            name="qubit-dephasing-h1",
            description="Qubit phase damping with H = Ω σ1",
            build=_qubit_h1,
            overrides=("gamma", "omega"),
        ),
        ModelEntry(
            name="damped-oscillator",
            description="Energy-damped oscillator (truncated Fock space)",
            build=_damped,
            overrides=("gamma", "dim", "omega"),
        ),
        ModelEntry(
            name="phase-damped-oscillator",
            description="Phase-damped oscillator (truncated Fock space)",
            build=_phase_damped,
            overrides=("gamma", "dim", "omega"),
        ),
        ModelEntry(
            name="discrete-position",
            description="Decoherence in the discrete position on a circle",
            build=_discrete_position,
            overrides=("gamma", "dim"),
        ),
        ModelEntry(
            name="pure-decoherence",
            description="Pure decoherence of a d-level system",
            build=_pure_decoherence,
            overrides=("gamma", "dim", "rates"),
        ),
    )
}
"""Bundled models, keyed by name"""


def build_model(name: str, **overrides: Any) -> ModelInstance:
    """
    Build a registered model

    Parameters
    ----------
    name
        Registry name

    **overrides
        Parameter overrides (`gamma`, `dim`, `rates`, `omega`).
        Overrides set to `None` are ignored.

    Returns
    -------
    :
        Model

    Raises
    ------
    SpecError
        The model is not registered, does not accept one of the overrides
        or the parameters are invalid
    """
    try:
        entry = MODEL_REGISTRY[name]
    except KeyError as exc:
        msg = f"Unknown model {name!r}. Registered models: {list(MODEL_REGISTRY)}"
        raise SpecError(msg) from exc

    supplied = {k: v for k, v in overrides.items() if v is not None}
    unknown = set(supplied) - set(OVERRIDE_NAMES)
    if unknown:
        msg = f"Unknown overrides {sorted(unknown)}. Known overrides: {OVERRIDE_NAMES}"
        raise SpecError(msg)

    unsupported = set(supplied) - set(entry.overrides)
    if unsupported:
        msg = (
            f"Model {name!r} does not accept {sorted(unsupported)}. "
            f"Supported overrides: {entry.overrides}"
        )
        raise SpecError(msg)

    try:
        return entry.build(**supplied)
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise

        raise SpecError(str(exc)) from exc
