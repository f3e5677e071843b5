"""
Turning command-line input into run configurations and writing results
"""

# # Do not use this here, it breaks typer's annotations
# from __future__ import annotations

from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Callable, Optional

import attrs
import pandas as pd
import typer
from attrs import field, frozen
from loguru import logger

from dissipative_observables.cli.common_arguments_and_options import (
    LIST_SEPARATOR,
    SCHEDULE_SEPARATOR,
    OutputFormat,
)
from dissipative_observables.config import Tolerances, get_default_tolerances
from dissipative_observables.deformed.schedule import geometric_schedule
from dissipative_observables.exceptions import (
    BasisError,
    ClosureError,
    DimensionError,
    ExpansionError,
    IllConditionedError,
    OracleMismatchError,
    ScheduleError,
    SpecError,
)
from dissipative_observables.io import load_basis, load_lindblad_spec, load_operator
from dissipative_observables.lindblad.evolution import check_evolution_times
from dissipative_observables.lindblad.spec import LindbladSpec, build_generator
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    adjoint_generator,
)
from dissipative_observables.models.instance import ModelInstance
from dissipative_observables.models.registry import build_model
from dissipative_observables.operators.bases import OperatorBasis
from dissipative_observables.operators.core import Operator
from dissipative_observables.serialisation import json_dumps_deterministic
from dissipative_observables.validation.error_catching import CheckResultsStoreError

EXIT_CODE_FAILURE: int = 1
"""Exit code for oracle failures and invalid specifications"""

EXIT_CODE_ILL_CONDITIONED: int = 3
"""Exit code when we refuse to invert an ill-conditioned propagator"""

CANONICAL_BASIS: str = "canonical"
"""Value of `--basis` that selects the model's own basis"""

FAILURE_ERRORS: tuple[type[Exception], ...] = (
    BasisError,
    CheckResultsStoreError,
    ClosureError,
    DimensionError,
    ExpansionError,
    OracleMismatchError,
    ScheduleError,
    SpecError,
)
"""Errors which end a command with [EXIT_CODE_FAILURE][dissipative_observables.cli.run_config.EXIT_CODE_FAILURE]"""  # noqa: E501


@frozen(eq=False)
class RunTarget:
    """
    The generator (and optionally the model) a command works on
    """

    name: str
    """Model name or spec file path"""

    spec: LindbladSpec
    """Generator definition"""

    basis: Optional[OperatorBasis]
    """Canonical basis, if there is one"""

    model: Optional[ModelInstance] = None
    """Registered model, if the target came from the registry"""

    def generator_adjoint(self) -> Superoperator:
        """
        Adjoint generator L♯
        """
        return adjoint_generator(build_generator(self.spec))


def _optional_times(
    value: Optional[Sequence[float]],
) -> Optional[tuple[float, ...]]:
    if value is None:
        return None

    return check_evolution_times(value)


@frozen(eq=False)
class RunConfig:
    """
    Everything a command needs to run
    """

    target: RunTarget
    """What to run on"""

    times: Optional[tuple[float, ...]] = field(converter=_optional_times)
    """
    Times to use

    Non-empty, strictly increasing and non-negative.
    If `None`, the command picks its own default.
    """

    basis: Optional[OperatorBasis]
    """Basis to analyse"""

    tolerances: Tolerances
    """Tolerances to use"""

    out: Optional[Path] = None
    """Where to write the output (`None` means print it)"""

    output_format: OutputFormat = OutputFormat.json
    """Output format"""

    def require_basis(self) -> OperatorBasis:
        """
        Get the basis, raising if there is none

        Raises
        ------
        SpecError
            No basis was supplied and the target has no canonical basis
        """
        if self.basis is None:
            msg = (
                f"{self.target.name} has no canonical basis. "
                "Supply one with `--basis`."
            )
            raise SpecError(msg)

        return self.basis


def parse_float_list(value: str, param_hint: str) -> tuple[float, ...]:
    """
    Parse a separated list of numbers

    Raises
    ------
    typer.BadParameter
        The value cannot be parsed
    """
    try:
        return tuple(float(v) for v in value.split(LIST_SEPARATOR) if v.strip())
    except ValueError as exc:
        msg = f"Could not parse {value!r} as a list of numbers"
        raise typer.BadParameter(msg, param_hint=param_hint) from exc


def parse_schedule(value: str) -> tuple[float, ...]:
    """
    Parse a geometric schedule `tmin:tmax:n`

    Raises
    ------
    typer.BadParameter
        The value cannot be parsed or does not describe a valid schedule
    """
    parts = value.split(SCHEDULE_SEPARATOR)
    if len(parts) != 3:  # noqa: PLR2004
        msg = f"Expected `tmin:tmax:n`. Received {value!r}"
        raise typer.BadParameter(msg, param_hint="--schedule")

    try:
        return geometric_schedule(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--schedule") from exc


def resolve_times(
    times: Optional[str], schedule: Optional[str]
) -> Optional[tuple[float, ...]]:
    """
    Get the times from `--times` or `--schedule`

    Returns
    -------
    :
        Times, `None` if neither option was supplied

    Raises
    ------
    typer.BadParameter
        Both options were supplied or one of them cannot be parsed
    """
    if times is not None and schedule is not None:
        msg = "Supply at most one of `--times` and `--schedule`"
        raise typer.BadParameter(msg)

    if times is not None:
        res = parse_float_list(times, param_hint="--times")
        try:
            return check_evolution_times(res)
        except ScheduleError as exc:
            raise typer.BadParameter(str(exc), param_hint="--times") from exc

    if schedule is not None:
        return parse_schedule(schedule)

    return None


def resolve_tolerances(tol: Optional[float], cond_max: Optional[float]) -> Tolerances:
    """
    Apply `--tol` and `--cond-max` to the default tolerances
    """
    overrides: dict[str, float] = {}
    if tol is not None:
        overrides["tol_limit"] = tol

    if cond_max is not None:
        overrides["cond_max"] = cond_max

    try:
        return attrs.evolve(get_default_tolerances(), **overrides)
    except ValueError as exc:
        raise typer.BadParameter(str(exc)) from exc


def resolve_target(  # noqa: PLR0913
    model: Optional[str],
    spec: Optional[Path],
    gamma: Optional[float],
    dim: Optional[int],
    rates: Optional[str],
    omega: Optional[float],
    tolerances: Tolerances,
) -> RunTarget:
    """
    Build the target from `--model` (plus overrides) or `--spec`

    Raises
    ------
    typer.BadParameter
        Not exactly one of `--model` and `--spec` was supplied,
        or model overrides were combined with `--spec`

    SpecError
        The model or spec file is invalid
    """
    if model is not None and spec is not None:
        msg = "Supply only one of `--model` and `--spec`"
        raise typer.BadParameter(msg)

    if spec is not None:
        if any(v is not None for v in (gamma, dim, rates, omega)):
            msg = "Model overrides cannot be combined with `--spec`"
            raise typer.BadParameter(msg)

        lindblad_spec, basis = load_lindblad_spec(spec, tolerances=tolerances)

        return RunTarget(name=str(spec), spec=lindblad_spec, basis=basis)

    if model is None:
        msg = "Supply one of `--model` and `--spec`"
        raise typer.BadParameter(msg)

    instance = build_model(
        model,
        gamma=gamma,
        dim=dim,
        rates=None if rates is None else parse_float_list(rates, "--rates"),
        omega=omega,
    )

    return RunTarget(
        name=instance.name,
        spec=instance.spec,
        basis=instance.canonical_basis,
        model=instance,
    )


def resolve_basis(
    basis: str, target: RunTarget, tolerances: Tolerances
) -> Optional[OperatorBasis]:
    """
    Get the basis selected with `--basis`
    """
    if basis == CANONICAL_BASIS:
        return target.basis

    return load_basis(Path(basis), tolerances=tolerances)


def resolve_observable(
    observable: Optional[str],
    observable_file: Optional[Path],
    config: RunConfig,
) -> tuple[str, Operator]:
    """
    Get the observable selected with `--observable` or `--observable-file`

    Labels are looked up in the model's oracles first, then in the basis.

    Returns
    -------
    :
        Label (or file path) and the observable

    Raises
    ------
    typer.BadParameter
        Not exactly one of the options was supplied or the label is unknown
    """
    if observable is not None and observable_file is not None:
        msg = "Supply only one of `--observable` and `--observable-file`"
        raise typer.BadParameter(msg)

    if observable_file is not None:
        return str(observable_file), load_operator(observable_file)

    if observable is None:
        msg = "Supply one of `--observable` and `--observable-file`"
        raise typer.BadParameter(msg)

    model = config.target.model
    if model is not None and observable in model.oracles:
        return observable, model.oracles[observable].observable

    if config.basis is not None and observable in config.basis.labels:
        return observable, config.basis.element(observable)

    known = [] if model is None else list(model.oracles)
    if config.basis is not None:
        known.extend(v for v in config.basis.labels if v not in known)

    msg = f"Unknown observable {observable!r}. Known labels: {known}"
    raise typer.BadParameter(msg, param_hint="--observable")


def render(
    output_format: OutputFormat,
    json_data: dict[str, Any],
    frame: Callable[[], pd.DataFrame],
) -> str:
    """
    Render results in the requested format

    Parameters
    ----------
    output_format
        Format to render

    json_data
        Raw JSON data, rendered deterministically
        (sorted keys, shortest round-trip floats)

    frame
        Callable returning the long-form table used for CSV output

    Returns
    -------
    :
        Rendered output
    """
    if output_format == OutputFormat.csv:
        return str(frame().to_csv(index=False, lineterminator="\n"))

    return json_dumps_deterministic(json_data)


def write_output(text: str, out: Optional[Path]) -> None:
    """
    Write output to a file, or print it if `out` is `None`
    """
    if out is None:
        typer.echo(text)
        return

    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        fh.write(text)

    logger.info(f"Wrote output to {out}")


@contextmanager
def exit_codes() -> Iterator[None]:
    """
    Translate our errors into the CLI's exit codes

    [IllConditionedError][dissipative_observables.exceptions.IllConditionedError]
    gives exit code 3,
    the errors in [FAILURE_ERRORS][dissipative_observables.cli.run_config.FAILURE_ERRORS]
    give exit code 1.
    Usage errors are left to typer (exit code 2).
    """  # noqa: E501
    try:
        yield

    except IllConditionedError as exc:
        logger.error(str(exc))
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(code=EXIT_CODE_ILL_CONDITIONED) from exc

    except FAILURE_ERRORS as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        typer.echo(f"Error ({type(exc).__name__}): {exc}", err=True)
        raise typer.Exit(code=EXIT_CODE_FAILURE) from exc
