"""
CLI for the model registry
"""

# # Do not use this here, it breaks typer's annotations
# from __future__ import annotations

from pathlib import Path
from typing import Annotated, Any

import typer
from loguru import logger

from dissipative_observables.cli.common_arguments_and_options import (
    DIM_OPTION,
    GAMMA_OPTION,
    OMEGA_OPTION,
    RATES_OPTION,
)
from dissipative_observables.cli.run_config import (
    exit_codes,
    parse_float_list,
    write_output,
)
from dissipative_observables.io import write_lindblad_spec
from dissipative_observables.models.registry import MODEL_REGISTRY, build_model
from dissipative_observables.serialisation import json_dumps_deterministic

app = typer.Typer()


def model_list() -> list[dict[str, Any]]:
    """
    Summaries of the registered models, built with their default parameters

    This is the direct Python API.

    Returns
    -------
    :
        One summary per model, in registry order
    """
    res = []
    for name, entry in MODEL_REGISTRY.items():
        summary = build_model(name).to_summary_dict()
        summary["description"] = entry.description
        summary["overrides"] = list(entry.overrides)
        res.append(summary)

    return res


@app.command(name="list")
def model_list_command(
    as_json: Annotated[
        bool, typer.Option("--json", help="Print the registry as JSON")
    ] = False,
) -> None:
    """
    List the registered models
    """
    summaries = model_list()
    if as_json:
        write_output(json_dumps_deterministic(summaries), out=None)
        return

    for summary in summaries:
        expected = summary["expected_contraction"] or "-"
        typer.echo(
            f"{summary['name']:<24} dim={summary['dim']:<3} "
            f"contraction={expected:<14} {summary['description']}"
        )


def model_export(  # noqa: PLR0913
    name: str,
    out: Path,
    gamma: Any,
    dim: Any,
    rates: Any,
    omega: Any,
) -> None:
    """
    Write a registered model as a generator specification file

    This is the direct Python API.
    The file includes the model's canonical basis.

    Parameters
    ----------
    name
        Registry name

    out
        File to write

    gamma, dim, rates, omega
        Parameter overrides (`None` to keep the default)
    """
    model = build_model(name, gamma=gamma, dim=dim, rates=rates, omega=omega)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_lindblad_spec(model.spec, out, canonical_basis=model.canonical_basis)
    logger.success(f"Wrote {model.name} to {out}")


@app.command(name="export")
def model_export_command(  # noqa: PLR0913
    name: Annotated[str, typer.Argument(help="Name of the registered model")],
    out: Annotated[
        Path,
        typer.Option("--out", help="File in which to write the specification"),
    ],
    gamma: GAMMA_OPTION = None,
    dim: DIM_OPTION = None,
    rates: RATES_OPTION = None,
    omega: OMEGA_OPTION = None,
) -> None:
    """
    Export a registered model as a generator specification file
    """
    with exit_codes():
        model_export(
            name=name,
            out=out,
            gamma=gamma,
            dim=dim,
            rates=None if rates is None else parse_float_list(rates, "--rates"),
            omega=omega,
        )
