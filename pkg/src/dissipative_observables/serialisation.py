"""
Serialisation of Python objects to standard data exchange formats
"""

from __future__ import annotations

import json
import math
from typing import Any, Union

import cattrs.preconf.json
import numpy as np
import numpy.typing as npt

converter_json = cattrs.preconf.json.make_converter()

INFINITE_TIME_MARKER: str = "inf"
"""How t = +∞ is written in JSON output"""

MatrixPairs = list[list[list[float]]]
"""Matrix as nested row-major arrays of [re, im] pairs"""


def json_dumps_deterministic(inp: Any) -> str:
    """
    JSON dump raw data

    This ensures that consistent settings are used for writing of all JSON data,
    so identical inputs always give byte-identical output.
    Floats are written in their shortest round-trip form.

    Parameters
    ----------
    inp
        Raw data to dump to JSON

    Returns
    -------
        JSON form of the raw data
    """
    return json.dumps(
        inp,
        ensure_ascii=True,
        sort_keys=True,
        indent=4,
        separators=(",", ":"),
        allow_nan=False,
    )


def complex_to_pair(value: complex) -> list[float]:
    """
    Convert a complex number to an [re, im] pair of Python floats
    """
    return [float(value.real), float(value.imag)]


def array_to_pairs(values: npt.ArrayLike) -> Any:
    """
    Convert a complex array of any rank to nested lists ending in [re, im] pairs
    """
    arr = np.asarray(values, dtype=np.complex128)

    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def array_from_pairs(raw: Any) -> npt.NDArray[np.complex128]:
    """
    Convert nested lists ending in [re, im] pairs to a complex array

    Raises
    ------
    ValueError
        The innermost lists are not pairs
    """
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim == 0 or arr.shape[-1] != 2:  # noqa: PLR2004
        msg = f"Expected nested [re, im] pairs. Received data of shape {arr.shape}"
        raise ValueError(msg)

    return arr[..., 0] + 1j * arr[..., 1]  # type: ignore[no-any-return]


def time_to_json(time: float) -> Union[float, str]:
    """
    Convert a time to its JSON form (+∞ is written as a marker string)
    """
    if math.isinf(time) and time > 0:
        return INFINITE_TIME_MARKER

    return float(time)


def time_from_json(raw: Union[float, int, str]) -> float:
    """
    Inverse of [time_to_json][dissipative_observables.serialisation.time_to_json]
    """
    if raw == INFINITE_TIME_MARKER:
        return math.inf

    return float(raw)


converter_json.register_unstructure_hook(complex, complex_to_pair)
converter_json.register_structure_hook(
    complex, lambda raw, _: complex(raw[0], raw[1])
)
