"""
Support for testing

This covers both generation of random (but reproducible) operators
and comparisons of operators and superoperators.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Optional, Union

import numpy as np
import numpy.typing as npt

from dissipative_observables.deformed.structure import StructureTensor
from dissipative_observables.exceptions import OracleMismatchError
from dissipative_observables.lindblad.superoperator import Superoperator
from dissipative_observables.operators.core import Operator, max_abs

DEFAULT_SEED: int = 20240917
"""Seed used when none is supplied"""


def get_rng(seed: Union[int, np.random.Generator, None] = None) -> np.random.Generator:
    """
    Get a random number generator

    Parameters
    ----------
    seed
        Seed or generator.
        If `None`, [DEFAULT_SEED][dissipative_observables.testing.DEFAULT_SEED] is used.

    Returns
    -------
    :
        Random number generator
    """
    if isinstance(seed, np.random.Generator):
        return seed

    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_operator(
    dim: int, seed: Union[int, np.random.Generator, None] = None
) -> Operator:
    """
    Random complex matrix with standard normal real and imaginary parts
    """
    rng = get_rng(seed)

    res: Operator = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal(
        (dim, dim)
    )

    return res


def random_hermitian(
    dim: int, seed: Union[int, np.random.Generator, None] = None
) -> Operator:
    """
    Random Hermitian matrix
    """
    res = random_operator(dim, seed)

    return 0.5 * (res + res.conj().T)


def random_density_matrix(
    dim: int, seed: Union[int, np.random.Generator, None] = None
) -> Operator:
    """
    Random density matrix (positive semi-definite, unit trace)
    """
    res = random_operator(dim, seed)
    res = res @ res.conj().T

    return res / np.trace(res)  # type: ignore[no-any-return]


def random_rates(
    count: int,
    seed: Union[int, np.random.Generator, None] = None,
    low: float = 0.2,
    high: float = 2.0,
) -> tuple[float, ...]:
    """
    Random, strictly positive rates
    """
    rng = get_rng(seed)

    return tuple(float(v) for v in rng.uniform(low, high, size=count))


def assert_operators_close(
    res: npt.NDArray[np.complex128],
    exp: npt.NDArray[np.complex128],
    atol: float,
    description: Optional[str] = None,
) -> float:
    """
    Assert that two operators (or arrays) agree entrywise

    Parameters
    ----------
    res
        Result

    exp
        Expected value

    atol
        Largest entrywise deviation we accept

    description
        Description to use in the error message

    Returns
    -------
    :
        The largest entrywise deviation

    Raises
    ------
    OracleMismatchError
        The deviation exceeds `atol`
    """
    if res.shape != exp.shape:
        msg = f"Shapes differ. {res.shape=} {exp.shape=}"
        raise AssertionError(msg)

    deviation = max_abs(res - exp)
    if deviation > atol:
        raise OracleMismatchError(
            description or "Operator comparison", deviation=deviation, tolerance=atol
        )

    return deviation


def assert_superoperators_close(
    res: Superoperator,
    exp: Superoperator,
    atol: float,
    description: Optional[str] = None,
) -> float:
    """
    Assert that two superoperators agree entrywise

    See [assert_operators_close][dissipative_observables.testing.assert_operators_close].
    """  # noqa: E501
    return assert_operators_close(
        res.matrix, exp.matrix, atol=atol, description=description
    )


def structure_tensor_from_brackets(
    n: int,
    brackets: Mapping[tuple[int, int], Mapping[int, complex]],
    factor: complex = 1.0,
) -> StructureTensor:
    """
    Build structure constants from a table of brackets

    Parameters
    ----------
    n
        Dimension of the algebra

    brackets
        `{(i, j): {k: c}}` meaning [x_i, x_j] = sum_k c x_k.
        Only one of (i, j) and (j, i) should be given,
        the other follows from antisymmetry.

    factor
        Factor applied to every structure constant

    Returns
    -------
    :
        Structure constants at t = ∞, with labels x0, x1, ...
    """
    values = np.zeros((n, n, n), dtype=np.complex128)
    for (i, j), image in brackets.items():
        for k, coefficient in image.items():
            values[k, i, j] = factor * coefficient
            values[k, j, i] = -factor * coefficient

    return StructureTensor(
        values=values, time=np.inf, labels=[f"x{i}" for i in range(n)]
    )
