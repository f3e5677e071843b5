"""
Input/output of specifications, bases and operators to/from disk
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

import cattrs.errors
from loguru import logger

from dissipative_observables.config import Tolerances
from dissipative_observables.exceptions import SpecError
from dissipative_observables.lindblad.raw import (
    JumpOperatorFile,
    LindbladSpecFile,
    OperatorBasisFile,
)
from dissipative_observables.lindblad.spec import JumpOperator, LindbladSpec
from dissipative_observables.operators.bases import OperatorBasis
from dissipative_observables.operators.core import Operator, as_operator
from dissipative_observables.serialisation import (
    array_from_pairs,
    array_to_pairs,
    converter_json,
    json_dumps_deterministic,
)

STRUCTURE_ERRORS: tuple[type[Exception], ...] = (
    cattrs.errors.BaseValidationError,
    KeyError,
    TypeError,
    ValueError,
)
"""Exceptions raised when input does not match a raw data model"""


def basis_from_raw(
    raw: OperatorBasisFile, tolerances: Optional[Tolerances] = None
) -> OperatorBasis:
    """
    Convert the raw basis data model to an [OperatorBasis][dissipative_observables.operators.OperatorBasis]
    """  # noqa: E501
    return OperatorBasis.from_operators(
        [array_from_pairs(el) for el in raw.elements],
        labels=raw.labels,
        interior=raw.interior,
        tolerances=tolerances,
    )


def basis_to_raw(basis: OperatorBasis) -> OperatorBasisFile:
    """
    Convert an operator basis to its raw data model
    """
    return OperatorBasisFile(
        labels=list(basis.labels),
        elements=[array_to_pairs(el) for el in basis.elements],
        interior=basis.interior,
    )


def spec_from_raw(
    raw: LindbladSpecFile, tolerances: Optional[Tolerances] = None
) -> LindbladSpec:
    """
    Convert the raw specification data model to a
    [LindbladSpec][dissipative_observables.lindblad.LindbladSpec]

    Raises
    ------
    SpecError
        The data is inconsistent (e.g. a matrix does not have shape `(dim, dim)`)
        or violates the generator invariants
    """
    try:
        hamiltonian = as_operator(array_from_pairs(raw.hamiltonian))
        jumps = tuple(
            JumpOperator(operator=array_from_pairs(j.op), rate=j.rate)
            for j in raw.jumps
        )
    except ValueError as exc:
        msg = f"Could not read the matrices in the specification: {exc}"
        raise SpecError(msg) from exc

    if hamiltonian.shape != (raw.dim, raw.dim):
        msg = f"The Hamiltonian has shape {hamiltonian.shape} but {raw.dim=}"
        raise SpecError(msg)

    return LindbladSpec(hamiltonian=hamiltonian, jumps=jumps, tolerances=tolerances)


def spec_to_raw(
    spec: LindbladSpec, canonical_basis: Optional[OperatorBasis] = None
) -> LindbladSpecFile:
    """
    Convert a specification (and optionally a basis) to the raw data model
    """
    return LindbladSpecFile(
        dim=spec.dim,
        hamiltonian=array_to_pairs(spec.hamiltonian),
        jumps=[
            JumpOperatorFile(op=array_to_pairs(j.operator), rate=j.rate)
            for j in spec.jumps
        ],
        canonical_basis=(
            basis_to_raw(canonical_basis) if canonical_basis is not None else None
        ),
    )


def _load_json(path: Path) -> Any:
    with open(path) as fh:
        return json.load(fh)


def load_lindblad_spec(
    path: Path, tolerances: Optional[Tolerances] = None
) -> tuple[LindbladSpec, Optional[OperatorBasis]]:
    """
    Load a generator specification file

    Parameters
    ----------
    path
        Path to the JSON file

    tolerances
        Tolerances to use when checking the specification

    Returns
    -------
    :
        The specification and its canonical basis (`None` if the file has none)

    Raises
    ------
    SpecError
        The file does not follow the schema or the specification is invalid
    """
    logger.debug(f"Loading generator specification from {path}")
    try:
        raw = converter_json.structure(_load_json(path), LindbladSpecFile)
    except (json.JSONDecodeError, *STRUCTURE_ERRORS) as exc:
        msg = f"{path} does not follow the specification schema: {exc}"
        raise SpecError(msg) from exc

    spec = spec_from_raw(raw, tolerances=tolerances)
    basis = (
        basis_from_raw(raw.canonical_basis, tolerances=tolerances)
        if raw.canonical_basis is not None
        else None
    )

    return spec, basis


def write_lindblad_spec(
    spec: LindbladSpec,
    path: Path,
    canonical_basis: Optional[OperatorBasis] = None,
) -> None:
    """
    Write a generator specification (and optionally its basis) to disk
    """
    raw = spec_to_raw(spec, canonical_basis=canonical_basis)
    with open(path, "w") as fh:
        fh.write(json_dumps_deterministic(converter_json.unstructure(raw)))


def load_basis(path: Path, tolerances: Optional[Tolerances] = None) -> OperatorBasis:
    """
    Load a basis file

    Raises
    ------
    SpecError
        The file does not follow the basis schema
    """
    try:
        raw = converter_json.structure(_load_json(path), OperatorBasisFile)
    except (json.JSONDecodeError, *STRUCTURE_ERRORS) as exc:
        msg = f"{path} does not follow the basis schema: {exc}"
        raise SpecError(msg) from exc

    return basis_from_raw(raw, tolerances=tolerances)


def load_operator(path: Path) -> Operator:
    """
    Load an operator written as nested [re, im] pairs

    Raises
    ------
    SpecError
        The file does not contain a square matrix of pairs
    """
    try:
        return as_operator(array_from_pairs(_load_json(path)))
    except (json.JSONDecodeError, ValueError) as exc:
        msg = f"{path} does not contain an operator: {exc}"
        raise SpecError(msg) from exc

