"""
Common arguments and options used across our CLI
"""

# # Do not use this here, it breaks typer's annotations
# from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Annotated, Optional

import typer

LIST_SEPARATOR: str = ","
"""Separator to use when providing multiple numbers in one option"""

SCHEDULE_SEPARATOR: str = ":"
"""Separator of the parts of a geometric schedule `tmin:tmax:n`"""


class OutputFormat(str, Enum):
    """
    Formats in which results can be written
    """

    json = "json"
    csv = "csv"


MODEL_OPTION = Annotated[
    Optional[str],
    typer.Option(
        "--model",
        help=(
            "Name of a registered model. "
            "Use `dissipative-observables model list` to see the options. "
            "Exactly one of `--model` and `--spec` must be supplied."
        ),
    ),
]

SPEC_OPTION = Annotated[
    Optional[Path],
    typer.Option(
        "--spec",
        help="Path to a generator specification (JSON) file",
        exists=True,
        dir_okay=False,
        file_okay=True,
    ),
]

GAMMA_OPTION = Annotated[
    Optional[float],
    typer.Option("--gamma", help="Override the model's dissipation rate"),
]

DIM_OPTION = Annotated[
    Optional[int],
    typer.Option(
        "--dim",
        help=(
            "Override the model's Hilbert space dimension "
            "(for oscillators, this is n_max + 1)"
        ),
    ),
]

RATES_OPTION = Annotated[
    Optional[str],
    typer.Option(
        "--rates",
        help=(
            f"A comma ({LIST_SEPARATOR!r}) separated list of rates "
            "(pure decoherence only, d - 1 values)"
        ),
    ),
]

OMEGA_OPTION = Annotated[
    Optional[float],
    typer.Option("--omega", help="Override the strength of the model's Hamiltonian"),
]

TIMES_OPTION = Annotated[
    Optional[str],
    typer.Option(
        "--times",
        help=(
            f"A comma ({LIST_SEPARATOR!r}) separated list of times. "
            "Cannot be combined with `--schedule`."
        ),
    ),
]

SCHEDULE_OPTION = Annotated[
    Optional[str],
    typer.Option(
        "--schedule",
        help=(
            "Geometric schedule, written as `tmin:tmax:n`. "
            "Cannot be combined with `--times`."
        ),
    ),
]

BASIS_OPTION = Annotated[
    str,
    typer.Option(
        "--basis",
        help=(
            "Basis to analyse. "
            "Either `canonical` (the basis that comes with the model or spec file) "
            "or the path to a basis (JSON) file."
        ),
    ),
]

OUT_OPTION = Annotated[
    Optional[Path],
    typer.Option(
        "--out",
        help="File in which to write the output. If not supplied, print it.",
        dir_okay=False,
    ),
]

FORMAT_OPTION = Annotated[
    OutputFormat,
    typer.Option("--format", help="Output format"),
]

TOL_OPTION = Annotated[
    Optional[float],
    typer.Option(
        "--tol",
        help="Tolerance used to decide whether limits have converged (tol_limit)",
    ),
]

COND_MAX_OPTION = Annotated[
    Optional[float],
    typer.Option(
        "--cond-max",
        help=(
            "Largest condition number of the propagator we are willing to invert. "
            "Pass `inf` to always invert."
        ),
    ),
]

N_PROCESSES_OPTION = Annotated[
    int, typer.Option("--n-processes", help="Number of parallel processes to use")
]
