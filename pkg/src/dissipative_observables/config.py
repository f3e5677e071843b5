"""
Numerical tolerances and how to override them

Every tolerance can be overridden from the environment by setting
`DISSIPATIVE_OBSERVABLES_<FIELD NAME IN UPPER CASE>`,
e.g. `DISSIPATIVE_OBSERVABLES_COND_MAX=1e14`.
"""

from __future__ import annotations

import os
from typing import Optional

import attrs
from attrs import field, frozen
from loguru import logger

ENV_PREFIX = "DISSIPATIVE_OBSERVABLES_"
"""Prefix of environment variables that override tolerances"""


def _positive(
    instance: Tolerances, attribute: attrs.Attribute[float], value: float
) -> None:
    if not value > 0:
        msg = f"{attribute.name} must be positive. Received {value=}"
        raise ValueError(msg)


@frozen
class Tolerances:
    """
    Numerical tolerances used throughout the package
    """

    tol_herm: float = field(default=1e-10, validator=_positive)
    """Absolute tolerance (max-entry norm) for Hermiticity checks"""

    tol_orth: float = field(default=1e-10, validator=_positive)
    """Absolute tolerance (max-entry norm) for orthogonality checks"""

    tol_expand: float = field(default=1e-10, validator=_positive)
    """Relative tolerance on basis reconstruction residuals"""

    tol_closure: float = field(default=1e-9, validator=_positive)
    """Relative tolerance on the out-of-span part of bracket results"""

    tol_jacobi: float = field(default=1e-8, validator=_positive)
    """Tolerance on Jacobi identity residuals at finite time"""

    tol_limit: float = field(default=1e-7, validator=_positive)
    """Entrywise Cauchy tolerance for t -> infinity limits"""

    tol_kernel: float = field(default=1e-9, validator=_positive)
    """Relative singular value threshold for null spaces and ranks"""

    cond_max: float = field(default=1e12, validator=_positive)
    """Largest condition number of a propagator we are willing to invert"""

    n_guard: int = field(default=2, validator=attrs.validators.ge(0))
    """Number of top Fock levels excluded from comparisons in truncated models"""


def tolerances_from_environment(base: Optional[Tolerances] = None) -> Tolerances:
    """
    Apply any overrides found in the environment

    Parameters
    ----------
    base
        Tolerances to start from. If not supplied, the package defaults.

    Returns
    -------
    :
        Tolerances with environment overrides applied
    """
    if base is None:
        base = Tolerances()

    overrides: dict[str, float | int] = {}
    for fld in attrs.fields(Tolerances):
        env_value = os.environ.get(f"{ENV_PREFIX}{fld.name.upper()}")
        if env_value is None:
            continue

        if fld.name == "n_guard":
            overrides[fld.name] = int(env_value)
        else:
            overrides[fld.name] = float(env_value)

    if overrides:
        logger.debug(f"Tolerance overrides from the environment: {overrides}")

    return attrs.evolve(base, **overrides)


_DEFAULT_TOLERANCES: Optional[Tolerances] = None


def get_default_tolerances() -> Tolerances:
    """
    Get the tolerances used when none are passed explicitly

    Returns
    -------
    :
        The global default tolerances
        (package defaults plus environment overrides unless
        [set_default_tolerances][dissipative_observables.config.set_default_tolerances]
        has been called).
    """
    global _DEFAULT_TOLERANCES  # noqa: PLW0603
    if _DEFAULT_TOLERANCES is None:
        _DEFAULT_TOLERANCES = tolerances_from_environment()

    return _DEFAULT_TOLERANCES


def set_default_tolerances(tolerances: Optional[Tolerances]) -> None:
    """
    Replace the global default tolerances

    Parameters
    ----------
    tolerances
        New defaults. Pass `None` to go back to reading the environment.
    """
    global _DEFAULT_TOLERANCES  # noqa: PLW0603
    _DEFAULT_TOLERANCES = tolerances


def resolve_tolerances(tolerances: Optional[Tolerances]) -> Tolerances:
    """
    Return `tolerances` if given, the global default otherwise
    """
    if tolerances is None:
        return get_default_tolerances()

    return tolerances
