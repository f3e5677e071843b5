"""
Command-line interface
"""

# # Do not use this here, it breaks typer's annotations
# from __future__ import annotations

from pathlib import Path
from typing import Annotated, Optional

import pandas as pd
import typer
from loguru import logger

import dissipative_observables
from dissipative_observables.cli.common_arguments_and_options import (
    BASIS_OPTION,
    COND_MAX_OPTION,
    DIM_OPTION,
    FORMAT_OPTION,
    GAMMA_OPTION,
    MODEL_OPTION,
    N_PROCESSES_OPTION,
    OMEGA_OPTION,
    OUT_OPTION,
    RATES_OPTION,
    SCHEDULE_OPTION,
    SPEC_OPTION,
    TIMES_OPTION,
    TOL_OPTION,
    OutputFormat,
)
from dissipative_observables.cli.model import app as app_model
from dissipative_observables.cli.run_config import (
    EXIT_CODE_FAILURE,
    RunConfig,
    exit_codes,
    parse_float_list,
    render,
    resolve_basis,
    resolve_observable,
    resolve_target,
    resolve_times,
    resolve_tolerances,
    write_output,
)
from dissipative_observables.contraction.classification import (
    LieClassification,
    classify_limit,
)
from dissipative_observables.contraction.kernel import image_algebra_is_abelian
from dissipative_observables.deformed.limits import (
    LimitReport,
    asymptotic_structure_constants,
)
from dissipative_observables.deformed.schedule import default_schedule, limit_schedule
from dissipative_observables.deformed.structure import tensors_to_frame
from dissipative_observables.lindblad.evolution import (
    ObservableEvolution,
    evolve_observable,
)
from dissipative_observables.logging import setup_logging
from dissipative_observables.models.registry import build_model
from dissipative_observables.operators.core import Operator
from dissipative_observables.validation.error_catching import CheckResultsStore
from dissipative_observables.validation.model import get_validate_model_result

app = typer.Typer()


def version_callback(version: Optional[bool]) -> None:
    """
    If requested, print the version string and exit
    """
    if version:
        print(f"dissipative-observables {dissipative_observables.__version__}")
        raise typer.Exit(code=0)


@app.callback()
def cli(
    version: Annotated[
        Optional[bool],
        typer.Option(
            "--version",
            help="Print the version number and exit",
            callback=version_callback,
            is_eager=True,
        ),
    ] = None,
    no_logging: Annotated[
        Optional[bool],
        typer.Option(
            "--no-logging",
            help=("Disable all logging. If supplied, overrides '--logging-config'."),
        ),
    ] = None,
    logging_level: Annotated[
        Optional[str],
        typer.Option(
            help=(
                "Logging level to use. "
                "This is only applied "
                "if no other logging configuration flags are supplied."
            ),
        ),
    ] = None,
    logging_config: Annotated[
        Optional[Path],
        typer.Option(
            help=(
                "Path to the logging configuration file. "
                "This will be loaded with "
                "[loguru-config](https://github.com/erezinman/loguru-config). "
                "If supplied, this overrides any value provided with `--log-level`."
            )
        ),
    ] = None,
) -> None:
    """
    Entrypoint for the command-line interface
    """
    if no_logging:
        setup_logging(enable=False)

    else:
        setup_logging(
            enable=True, logging_config=logging_config, logging_level=logging_level
        )


def _run_config(  # noqa: PLR0913
    model: Optional[str],
    spec: Optional[Path],
    gamma: Optional[float],
    dim: Optional[int],
    rates: Optional[str],
    omega: Optional[float],
    times: Optional[str],
    schedule: Optional[str],
    basis: str,
    tol: Optional[float],
    cond_max: Optional[float],
    out: Optional[Path],
    output_format: OutputFormat,
) -> RunConfig:
    tolerances = resolve_tolerances(tol, cond_max)
    resolved_times = resolve_times(times, schedule)
    target = resolve_target(model, spec, gamma, dim, rates, omega, tolerances)

    return RunConfig(
        target=target,
        times=resolved_times,
        basis=resolve_basis(basis, target, tolerances),
        tolerances=tolerances,
        out=out,
        output_format=output_format,
    )


def evolve(config: RunConfig, observable_label: str, observable: Operator) -> None:
    """
    Evolve an observable and write the result

    This is the direct Python API.
    We expose this for two reasons:

    1. to make it easier for those who want to use Python rather than the CLI
    1. to ensure that we're passing all the CLI arguments correctly

    Parameters
    ----------
    config
        Run configuration (times are required)

    observable_label
        Label (or file path) of the observable, used in the output

    observable
        Observable to evolve
    """
    if config.times is None:
        msg = "`evolve` needs `--times` or `--schedule`"
        raise typer.BadParameter(msg)

    evolution: ObservableEvolution = evolve_observable(
        config.target.generator_adjoint(), observable, config.times
    )
    json_data = {
        "model": config.target.name,
        "observable_label": observable_label,
        **evolution.to_json_dict(),
    }

    write_output(
        render(config.output_format, json_data, evolution.to_frame), config.out
    )


@app.command(name="evolve")
def evolve_command(  # noqa: PLR0913
    model: MODEL_OPTION = None,
    spec: SPEC_OPTION = None,
    observable: Annotated[
        Optional[str],
        typer.Option(
            "--observable",
            help="Label of the observable (a basis or oracle label, e.g. `sigma1`)",
        ),
    ] = None,
    observable_file: Annotated[
        Optional[Path],
        typer.Option(
            "--observable-file",
            help="File holding the observable as nested [re, im] pairs",
            exists=True,
            dir_okay=False,
        ),
    ] = None,
    gamma: GAMMA_OPTION = None,
    dim: DIM_OPTION = None,
    rates: RATES_OPTION = None,
    omega: OMEGA_OPTION = None,
    times: TIMES_OPTION = None,
    schedule: SCHEDULE_OPTION = None,
    basis: BASIS_OPTION = "canonical",
    out: OUT_OPTION = None,
    output_format: FORMAT_OPTION = OutputFormat.json,
) -> None:
    """
    Evolve an observable in the Heisenberg picture, A_t = Λ♯_t(A)
    """
    with exit_codes():
        config = _run_config(
            model=model,
            spec=spec,
            gamma=gamma,
            dim=dim,
            rates=rates,
            omega=omega,
            times=times,
            schedule=schedule,
            basis=basis,
            tol=None,
            cond_max=None,
            out=out,
            output_format=output_format,
        )
        label, operator = resolve_observable(observable, observable_file, config)
        evolve(config, observable_label=label, observable=operator)


def _limit_report(config: RunConfig, n_processes: int) -> LimitReport:
    basis = config.require_basis()
    generator_adjoint = config.target.generator_adjoint()
    times = config.times
    if times is None:
        times = default_schedule(generator_adjoint, basis, tolerances=config.tolerances)
        logger.info(f"Using the default schedule {times}")

    return asymptotic_structure_constants(
        generator_adjoint,
        basis,
        times,
        tolerances=config.tolerances,
        n_processes=n_processes,
    )


def structure(config: RunConfig, n_processes: int) -> LimitReport:
    """
    Compute the structure constants along the schedule and write them

    This is the direct Python API.

    Parameters
    ----------
    config
        Run configuration.
        If no times are given, the default schedule is used.

    n_processes
        Number of processes to use

    Returns
    -------
    :
        Limit report (also written, together with the structure constants)
    """
    report = _limit_report(config, n_processes)

    def frame() -> pd.DataFrame:
        tensors = list(report.tensors)
        if report.limit is not None:
            tensors.append(report.limit)

        return tensors_to_frame(tensors)

    json_data = {
        "model": config.target.name,
        "tensors": [tensor.to_json_dict() for tensor in report.tensors],
        "limit_report": report.to_json_dict(),
    }
    write_output(render(config.output_format, json_data, frame), config.out)

    return report


@app.command(name="structure")
def structure_command(  # noqa: PLR0913
    model: MODEL_OPTION = None,
    spec: SPEC_OPTION = None,
    gamma: GAMMA_OPTION = None,
    dim: DIM_OPTION = None,
    rates: RATES_OPTION = None,
    omega: OMEGA_OPTION = None,
    times: TIMES_OPTION = None,
    schedule: SCHEDULE_OPTION = None,
    basis: BASIS_OPTION = "canonical",
    tol: TOL_OPTION = None,
    cond_max: COND_MAX_OPTION = None,
    out: OUT_OPTION = None,
    output_format: FORMAT_OPTION = OutputFormat.json,
    n_processes: N_PROCESSES_OPTION = 1,
) -> None:
    """
    Structure constants C^k_ij(t) of the deformed commutator and their limit
    """
    with exit_codes():
        config = _run_config(
            model=model,
            spec=spec,
            gamma=gamma,
            dim=dim,
            rates=rates,
            omega=omega,
            times=times,
            schedule=schedule,
            basis=basis,
            tol=tol,
            cond_max=cond_max,
            out=out,
            output_format=output_format,
        )
        structure(config, n_processes=n_processes)


def contract(config: RunConfig, n_processes: int) -> LieClassification:
    """
    Classify the contracted algebra and write the classification

    This is the direct Python API.
    Non-convergence is reported as `unclassified`, not raised.
    Whether the surviving observables commute is decided
    from their weak limits along
    [limit_schedule][dissipative_observables.deformed.schedule.limit_schedule],
    independently of the times used for the structure constants.

    Parameters
    ----------
    config
        Run configuration.
        If no times are given, the default schedule is used.

    n_processes
        Number of processes to use

    Returns
    -------
    :
        Classification
    """
    report = _limit_report(config, n_processes)
    classification = classify_limit(report, tolerances=config.tolerances)
    generator_adjoint = config.target.generator_adjoint()
    abelian_image = image_algebra_is_abelian(
        generator_adjoint,
        config.require_basis(),
        limit_schedule(generator_adjoint),
        tolerances=config.tolerances,
    )
    model = config.target.model
    expected = (
        None
        if model is None or model.expected_contraction is None
        else model.expected_contraction.value
    )
    logger.info(f"{config.target.name} contracts to {classification.label.value}")

    json_data = {
        "model": config.target.name,
        "classification": classification.to_json_dict(),
        "expected_contraction": expected,
        "image_algebra_is_abelian": abelian_image,
        "limit_report": report.to_json_dict(),
    }

    def frame() -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "model": config.target.name,
                    "label": classification.label.value,
                    "center_dim": classification.center_dim,
                    "derived_dim": classification.derived_dim,
                    "killing_positive": classification.killing_signature[0],
                    "killing_negative": classification.killing_signature[1],
                    "killing_zero": classification.killing_signature[2],
                    "image_algebra_is_abelian": abelian_image,
                    "expected_contraction": expected,
                }
            ]
        )

    write_output(render(config.output_format, json_data, frame), config.out)

    return classification


@app.command(name="contract")
def contract_command(  # noqa: PLR0913
    model: MODEL_OPTION = None,
    spec: SPEC_OPTION = None,
    gamma: GAMMA_OPTION = None,
    dim: DIM_OPTION = None,
    rates: RATES_OPTION = None,
    omega: OMEGA_OPTION = None,
    times: TIMES_OPTION = None,
    schedule: SCHEDULE_OPTION = None,
    basis: BASIS_OPTION = "canonical",
    tol: TOL_OPTION = None,
    cond_max: COND_MAX_OPTION = None,
    out: OUT_OPTION = None,
    output_format: FORMAT_OPTION = OutputFormat.json,
    n_processes: N_PROCESSES_OPTION = 1,
) -> None:
    """
    Classify the algebra obtained as t → ∞ (the contraction)
    """
    with exit_codes():
        config = _run_config(
            model=model,
            spec=spec,
            gamma=gamma,
            dim=dim,
            rates=rates,
            omega=omega,
            times=times,
            schedule=schedule,
            basis=basis,
            tol=tol,
            cond_max=cond_max,
            out=out,
            output_format=output_format,
        )
        contract(config, n_processes=n_processes)


def verify(  # noqa: PLR0913
    name: str,
    gamma: Optional[float],
    dim: Optional[int],
    rates: Optional[tuple[float, ...]],
    omega: Optional[float],
    truncation_pair: Optional[tuple[int, int]],
) -> CheckResultsStore:
    """
    Run every check of a registered model and print a summary

    This is the direct Python API.

    Parameters
    ----------
    name
        Registry name

    gamma, dim, rates, omega
        Parameter overrides (`None` to keep the default)

    truncation_pair
        Truncations compared by the oscillator truncation study.
        If `None`, the default pair is used.

    Returns
    -------
    :
        Check results
    """
    model = build_model(name, gamma=gamma, dim=dim, rates=rates, omega=omega)
    if truncation_pair is None:
        crs = get_validate_model_result(model)
    else:
        crs = get_validate_model_result(model, truncation_pair=truncation_pair)

    for result in crs.check_results:
        status = "PASS" if result.passed else "FAIL"
        deviation = "-" if result.deviation is None else f"{result.deviation:.3e}"
        typer.echo(f"{status} {result.description:<48} max deviation {deviation}")

    typer.echo(f"Checks passing: {crs.checks_summary_str(passing=True)}")
    typer.echo(f"Max deviation: {crs.max_deviation:.3e}")

    return crs


@app.command(name="verify")
def verify_command(  # noqa: PLR0913
    model: Annotated[
        str, typer.Option("--model", help="Name of the registered model to check")
    ],
    gamma: GAMMA_OPTION = None,
    dim: DIM_OPTION = None,
    rates: RATES_OPTION = None,
    omega: OMEGA_OPTION = None,
    truncation_pair: Annotated[
        Optional[str],
        typer.Option(
            "--truncation-pair",
            help=(
                "Two comma-separated values of n_max "
                "compared in the oscillator truncation study, e.g. `8,16`"
            ),
        ),
    ] = None,
) -> None:
    """
    Check a registered model against everything known about it in closed form

    Exits with code 1 if any check fails.
    """
    with exit_codes():
        pair: Optional[tuple[int, int]] = None
        if truncation_pair is not None:
            values = [
                int(v) for v in parse_float_list(truncation_pair, "--truncation-pair")
            ]
            if len(values) != 2:  # noqa: PLR2004
                msg = f"Expected two values. Received {truncation_pair!r}"
                raise typer.BadParameter(msg, param_hint="--truncation-pair")

            pair = (values[0], values[1])

        crs = verify(
            name=model,
            gamma=gamma,
            dim=dim,
            rates=None if rates is None else parse_float_list(rates, "--rates"),
            omega=omega,
            truncation_pair=pair,
        )

    if not crs.all_passed:
        logger.error(f"{model} failed {len(crs.checks_failing)} check(s)")
        raise typer.Exit(code=EXIT_CODE_FAILURE)

    logger.success(f"{model} passed all checks")


app.add_typer(app_model, name="model")

if __name__ == "__main__":
    app()
