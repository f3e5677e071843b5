"""
Checks of a model against what we know about it in closed form
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from typing import Optional, Union

import numpy as np
from loguru import logger

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.contraction.kernel import kernel_of_adjoint
from dissipative_observables.deformed.context import deformed_algebra_context
from dissipative_observables.deformed.limits import (
    DivergenceFlag,
    weak_limit_observable,
)
from dissipative_observables.deformed.product import deformed_product
from dissipative_observables.deformed.schedule import limit_schedule
from dissipative_observables.exceptions import OracleMismatchError
from dissipative_observables.lindblad.cptp import verify_cptp
from dissipative_observables.lindblad.spec import adjoint_generator_from_spec
from dissipative_observables.lindblad.superoperator import (
    Superoperator,
    adjoint_generator,
    apply,
    propagator,
)
from dissipative_observables.logging import LOG_LEVEL_INFO_MODEL
from dissipative_observables.models.discrete_position import (
    schwinger_relation_residual,
)
from dissipative_observables.models.instance import AdjointOracle, ModelInstance
from dissipative_observables.models.pure_decoherence import ZERO_RATE_ATOL
from dissipative_observables.models.registry import build_model
from dissipative_observables.operators.bases import matrix_unit
from dissipative_observables.operators.core import (
    Operator,
    hs_inner,
    hs_norm,
    max_abs,
    project_interior,
)
from dissipative_observables.testing import (
    assert_operators_close,
    get_rng,
    random_density_matrix,
    random_hermitian,
)
from dissipative_observables.validation.error_catching import CheckResultsStore

DEFAULT_REFERENCE_TIMES: tuple[float, ...] = (0.5, 1.0, 2.0, 4.0)
"""Times, in units of the model's rate (γt), at which oracles are compared"""

ORACLE_ATOL: float = 1e-9
"""Absolute tolerance for oracle comparisons (scaled by the observable's size)"""

PRODUCT_ATOL: float = 1e-8
"""Tolerance for deformed products (scaled by the size of the expected product)"""

MAX_PRODUCT_CHECK_DIM: int = 5
"""Largest dimension for which all matrix-unit products are checked"""

DUALITY_PAIRS: int = 200
"""Number of random (state, observable) pairs in the duality check"""

DEFAULT_TRUNCATION_PAIR: tuple[int, int] = (10, 20)
"""Truncations (n_max) compared in the oscillator truncation study"""

TRUNCATION_IMPROVEMENT: float = 10.0
"""Factor by which the oracle deviation must shrink when n_max is increased"""

TRUNCATION_FLOOR: float = 1e-10
"""Deviations below this count as converged"""

TRUNCATED_MODELS: tuple[str, ...] = ("damped-oscillator", "phase-damped-oscillator")
"""Models defined on a truncated Fock space"""


def model_rate(model: ModelInstance) -> float:
    """
    Rate γ used to express times as γt

    This is the model's `gamma` parameter, the largest of its `gammas`
    or, failing those, the largest jump rate.
    """
    if "gamma" in model.parameters:
        return float(model.parameters["gamma"])

    if "gammas" in model.parameters:
        rate = max(model.parameters["gammas"])
    else:
        rate = model.spec.max_rate

    return float(rate) if rate > 0 else 1.0


def reference_times(
    model: ModelInstance, scaled_times: Sequence[float] = DEFAULT_REFERENCE_TIMES
) -> tuple[float, ...]:
    """
    Convert γt values to times for a model
    """
    rate = model_rate(model)

    return tuple(float(v) / rate for v in scaled_times)


def oracle_deviation(
    generator_adjoint: Superoperator,
    oracle: AdjointOracle,
    t: float,
    interior: Optional[int] = None,
) -> float:
    """
    Max-entry deviation between Λ♯_t(A) and its closed form

    Parameters
    ----------
    generator_adjoint
        Adjoint generator L♯

    oracle
        Closed-form action

    t
        Time

    interior
        If supplied, only the leading `interior` x `interior` block is compared

    Returns
    -------
    :
        Deviation
    """
    res = apply(propagator(generator_adjoint, t), oracle.observable)
    exp = oracle.action(t)

    return max_abs(project_interior(res - exp, interior))


def _scaled_atol(observable: Operator, atol: float) -> float:
    return atol * max(1.0, max_abs(observable))


def check_oracle(
    generator_adjoint: Superoperator,
    oracle: AdjointOracle,
    times: Sequence[float],
    interior: Optional[int] = None,
    description: str = "oracle",
) -> float:
    """
    Compare Λ♯_t(A) with its closed form at several times

    Returns
    -------
    :
        Largest deviation

    Raises
    ------
    OracleMismatchError
        The deviation exceeds [ORACLE_ATOL][dissipative_observables.validation.model.ORACLE_ATOL]
        (scaled by the size of the observable)
    """  # noqa: E501
    atol = _scaled_atol(oracle.observable, ORACLE_ATOL)
    deviation = max(
        oracle_deviation(generator_adjoint, oracle, t, interior=interior) for t in times
    )
    if deviation > atol:
        raise OracleMismatchError(description, deviation=deviation, tolerance=atol)

    return deviation


def check_oracle_limit(
    generator_adjoint: Superoperator,
    oracle: AdjointOracle,
    schedule: Sequence[float],
    tolerances: Optional[Tolerances] = None,
    interior: Optional[int] = None,
    description: str = "oracle limit",
) -> float:
    """
    Compare the extrapolated weak limit of an observable with its closed form

    Returns
    -------
    :
        Deviation

    Raises
    ------
    ValueError
        The oracle has no known limit

    OracleMismatchError
        The extrapolation did not settle or does not match
    """
    if oracle.limit is None:
        msg = f"{description}: no closed-form limit to compare against"
        raise ValueError(msg)

    tols = resolve_tolerances(tolerances)
    atol = _scaled_atol(oracle.observable, 10 * tols.tol_limit)
    limit = weak_limit_observable(
        generator_adjoint,
        oracle.observable,
        schedule,
        tolerances=tols,
        interior=interior,
    )
    if isinstance(limit, DivergenceFlag):
        raise OracleMismatchError(
            f"{description} (extrapolation did not settle)",
            deviation=limit.final_delta,
            tolerance=tols.tol_limit,
        )

    return assert_operators_close(
        limit,
        project_interior(oracle.limit, interior),
        atol=atol,
        description=description,
    )


def check_cptp(
    generator: Superoperator,
    times: Sequence[float],
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Check that Λ_t is CPTP (and Λ♯_t unital) at several times

    Returns
    -------
    :
        Largest deviation from the CPTP conditions

    Raises
    ------
    OracleMismatchError
        One of the conditions fails
    """
    tols = resolve_tolerances(tolerances)
    deviations = []
    for t in times:
        report = verify_cptp(propagator(generator, t), tolerances=tols)
        deviation = max(
            report.trace_deviation,
            report.hermiticity_deviation,
            max(0.0, -report.choi_min_eigenvalue),
            report.unital_deviation,
        )
        if not (report.is_cptp and report.unital_adjoint):
            raise OracleMismatchError(
                f"CPTP conditions at {t=}", deviation=deviation, tolerance=tols.tol_herm
            )

        deviations.append(deviation)

    return max(deviations)


def check_generator_encoding(
    model: ModelInstance, tolerances: Optional[Tolerances] = None
) -> float:
    """
    Compare the GKSL-assembled generator with the model's direct formula
    """
    tols = resolve_tolerances(tolerances)
    direct = model.direct_generator.matrix

    return assert_operators_close(
        model.generator().matrix,
        direct,
        atol=tols.tol_herm * max(1.0, max_abs(direct)),
        description="GKSL assembly vs closed-form generator",
    )


def check_adjoint_encoding(
    model: ModelInstance, tolerances: Optional[Tolerances] = None
) -> float:
    """
    Compare the conjugate transpose of L with L♯ assembled from its own formula
    """
    tols = resolve_tolerances(tolerances)
    from_spec = adjoint_generator_from_spec(model.spec).matrix

    return assert_operators_close(
        adjoint_generator(model.generator()).matrix,
        from_spec,
        atol=tols.tol_herm * max(1.0, max_abs(from_spec)),
        description="adjoint generator vs adjoint GKSL form",
    )


def check_duality(
    model: ModelInstance,
    times: Sequence[float],
    tolerances: Optional[Tolerances] = None,
    seed: Union[int, np.random.Generator, None] = None,
    n_pairs: int = DUALITY_PAIRS,
) -> float:
    """
    Check Tr(Λ_t(rho) A) = Tr(rho Λ♯_t(A)) for random states and observables

    The pairs are spread evenly over `times`.

    Returns
    -------
    :
        Largest deviation over all pairs
    """
    tols = resolve_tolerances(tolerances)
    rng = get_rng(seed)
    generator = model.generator()
    generator_adjoint = adjoint_generator(generator)
    propagators = [
        (t, propagator(generator, t), propagator(generator_adjoint, t))
        for t in times
    ]

    deviations = []
    for i in range(n_pairs):
        t, forward, forward_adjoint = propagators[i % len(propagators)]
        rho = random_density_matrix(model.dim, rng)
        observable = random_hermitian(model.dim, rng)
        schrodinger = np.trace(apply(forward, rho) @ observable)
        heisenberg = np.trace(rho @ apply(forward_adjoint, observable))
        deviation = float(abs(schrodinger - heisenberg))
        atol = tols.tol_herm * max(1.0, hs_norm(observable))
        if deviation > atol:
            raise OracleMismatchError(
                f"Duality at {t=}", deviation=deviation, tolerance=atol
            )

        deviations.append(deviation)

    return max(deviations, default=0.0)


def _expected_kernel_dim(model: ModelInstance) -> Optional[int]:
    if model.decoherence is None:
        return None

    rates = model.decoherence.rates
    frequencies = model.decoherence.frequencies
    fixed = (rates <= ZERO_RATE_ATOL) & (np.abs(frequencies) <= ZERO_RATE_ATOL)

    return int(np.sum(fixed))


def check_kernel(
    model: ModelInstance, tolerances: Optional[Tolerances] = None
) -> float:
    """
    Check that observables the model says are fixed lie in the kernel of L♯

    For pure decoherence, the kernel dimension is also compared
    with the number of matrix units that are neither damped nor rotated.

    Returns
    -------
    :
        Largest relative out-of-kernel residual

    Raises
    ------
    OracleMismatchError
        A fixed observable is not in the kernel or the dimension is wrong
    """
    tols = resolve_tolerances(tolerances)
    report = kernel_of_adjoint(model.generator_adjoint(), tolerances=tols)

    expected_dim = _expected_kernel_dim(model)
    if expected_dim is not None and report.kernel_dim != expected_dim:
        raise OracleMismatchError(
            f"Kernel dimension (expected {expected_dim}, found {report.kernel_dim})",
            deviation=float(abs(report.kernel_dim - expected_dim)),
            tolerance=0.0,
        )

    residuals = [0.0]
    for label, oracle in model.oracles.items():
        if oracle.limit is None or not np.array_equal(oracle.limit, oracle.observable):
            continue

        observable = oracle.observable
        projection = sum(
            (hs_inner(k, observable) * k for k in report.kernel_basis),
            np.zeros_like(observable),
        )
        residual = hs_norm(observable - projection) / max(hs_norm(observable), 1.0)
        if residual > tols.tol_closure:
            raise OracleMismatchError(
                f"{label} is fixed but not in the kernel of L♯",
                deviation=residual,
                tolerance=tols.tol_closure,
            )

        residuals.append(residual)

    return max(residuals)


def check_decoherence_matrix(
    model: ModelInstance, times: Sequence[float], atol: float = ORACLE_ATOL
) -> float:
    """
    Compare the decoherence matrix with the action of Λ_t on matrix units

    Λ_t|m><n| = c_mn(t)|m><n|

    Raises
    ------
    ValueError
        The model has no decoherence matrix
    """
    decoherence = model.decoherence
    if decoherence is None:
        msg = f"{model.name} has no decoherence matrix"
        raise ValueError(msg)

    generator = model.generator()
    d = decoherence.d
    deviations = []
    for t in times:
        forward = propagator(generator, t)
        entries = decoherence.entries(t)
        for m, n in itertools.product(range(d), repeat=2):
            unit = matrix_unit(m, n, d)
            deviations.append(
                assert_operators_close(
                    apply(forward, unit),
                    entries[m, n] * unit,
                    atol=atol,
                    description=f"c_{m}{n}({t=})",
                )
            )

    return max(deviations)


def check_decoherence_products(
    model: ModelInstance,
    times: Sequence[float],
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Compare deformed products of matrix units with their closed form

    |m><n| ·_t |k><l| = δ_nk c_nm(t) c_lk(t) / c_lm(t) |m><l|

    Raises
    ------
    ValueError
        The model has no decoherence matrix
    """
    decoherence = model.decoherence
    if decoherence is None:
        msg = f"{model.name} has no decoherence matrix"
        raise ValueError(msg)

    tols = resolve_tolerances(tolerances)
    generator_adjoint = model.generator_adjoint()
    d = decoherence.d
    deviations = []
    for t in times:
        ctx = deformed_algebra_context(
            generator_adjoint, model.canonical_basis, t, tolerances=tols
        )
        for m, n, k, l in itertools.product(range(d), repeat=4):  # noqa: E741
            exp = decoherence.deformed_matrix_unit_product(t, m, n, k, l)
            res = deformed_product(ctx, matrix_unit(m, n, d), matrix_unit(k, l, d))
            deviations.append(
                assert_operators_close(
                    res,
                    exp,
                    atol=PRODUCT_ATOL * max(1.0, max_abs(exp)),
                    description=f"E_{m}{n} ·_t E_{k}{l} at {t=}",
                )
            )

    return max(deviations)


def check_schwinger_relation(
    model: ModelInstance,
    times: Sequence[float],
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Check U^k ·_t V^l = λ^{kl} V^l ·_t U^k for all k, l

    Times at which Λ♯_t is too ill-conditioned to invert are skipped.
    """
    tols = resolve_tolerances(tolerances)
    generator_adjoint = model.generator_adjoint()
    d = model.dim
    deviations = []
    for t in times:
        ctx = deformed_algebra_context(
            generator_adjoint, model.canonical_basis, t, tolerances=tols
        )
        if ctx.inverse is None:
            logger.debug(f"Skipping Schwinger relation at {t=} (no inverse)")
            continue

        for k, l in itertools.product(range(d), repeat=2):  # noqa: E741
            residual = schwinger_relation_residual(ctx, k, l)
            if residual > ORACLE_ATOL:
                raise OracleMismatchError(
                    f"Schwinger relation for {k=}, {l=} at {t=}",
                    deviation=residual,
                    tolerance=ORACLE_ATOL,
                )

            deviations.append(residual)

    return max(deviations, default=0.0)


def max_oracle_deviation(model: ModelInstance, times: Sequence[float]) -> float:
    """
    Largest deviation of any of the model's oracles (interior-projected)
    """
    generator_adjoint = model.generator_adjoint()
    interior = model.canonical_basis.interior

    return max(
        oracle_deviation(generator_adjoint, oracle, t, interior=interior)
        for oracle in model.oracles.values()
        for t in times
    )


def truncation_study(
    model: ModelInstance,
    n_max_pair: tuple[int, int] = DEFAULT_TRUNCATION_PAIR,
    scaled_times: Sequence[float] = DEFAULT_REFERENCE_TIMES,
) -> tuple[float, float]:
    """
    Oracle deviations of an oscillator model at two truncations

    Parameters
    ----------
    model
        Oscillator model (its parameters are reused)

    n_max_pair
        The two truncations to compare, smaller first

    scaled_times
        Times in units of γt

    Returns
    -------
    :
        Max interior oracle deviation at each truncation
    """
    res = []
    for n_max in n_max_pair:
        rebuilt = build_model(
            model.name,
            gamma=model.parameters.get("gamma"),
            omega=model.parameters.get("omega"),
            dim=n_max + 1,
        )
        times = reference_times(rebuilt, scaled_times)
        res.append(max_oracle_deviation(rebuilt, times))
        logger.debug(f"{model.name} with {n_max=}: max oracle deviation {res[-1]:.3e}")

    return res[0], res[1]


def check_truncation_convergence(
    model: ModelInstance,
    n_max_pair: tuple[int, int] = DEFAULT_TRUNCATION_PAIR,
    scaled_times: Sequence[float] = DEFAULT_REFERENCE_TIMES,
) -> float:
    """
    Check the oracle deviation shrinks when the truncation is increased

    The deviation at the larger truncation must be
    [TRUNCATION_IMPROVEMENT][dissipative_observables.validation.model.TRUNCATION_IMPROVEMENT]
    times smaller or below
    [TRUNCATION_FLOOR][dissipative_observables.validation.model.TRUNCATION_FLOOR].

    Returns
    -------
    :
        Deviation at the larger truncation
    """  # noqa: E501
    low, high = truncation_study(model, n_max_pair, scaled_times)
    tolerance = max(low / TRUNCATION_IMPROVEMENT, TRUNCATION_FLOOR)
    if high > tolerance:
        raise OracleMismatchError(
            f"Truncation study n_max={n_max_pair}", deviation=high, tolerance=tolerance
        )

    return high


def get_validate_model_result(
    model: ModelInstance,
    tolerances: Optional[Tolerances] = None,
    scaled_times: Sequence[float] = DEFAULT_REFERENCE_TIMES,
    seed: Union[int, np.random.Generator, None] = None,
    truncation_pair: tuple[int, int] = DEFAULT_TRUNCATION_PAIR,
) -> CheckResultsStore:
    """
    Run every check we have for a model

    Checks never stop at the first failure.
    Call `raise_if_errors` on the result to turn failures into an exception.

    Parameters
    ----------
    model
        Model to check

    tolerances
        Tolerances to use

    scaled_times
        Times, in units of γt, at which to compare

    seed
        Seed for the random states and observables of the duality check

    truncation_pair
        Truncations to compare for oscillator models

    Returns
    -------
    :
        Results of all the checks
    """
    tols = resolve_tolerances(tolerances)
    times = reference_times(model, scaled_times)
    crs = CheckResultsStore()
    logger.log(LOG_LEVEL_INFO_MODEL.name, f"Checking {model.name} at {times=}")

    generator_adjoint = model.generator_adjoint()
    interior = model.canonical_basis.interior
    schedule = limit_schedule(generator_adjoint)
    for label, oracle in model.oracles.items():
        crs.wrap(check_oracle, func_description=f"Oracle Λ♯_t({label})")(
            generator_adjoint,
            oracle,
            times,
            interior=interior,
            description=f"Λ♯_t({label})",
        )
        if oracle.limit is not None:
            crs.wrap(check_oracle_limit, func_description=f"Limit Λ♯_∞({label})")(
                generator_adjoint,
                oracle,
                schedule,
                tolerances=tols,
                interior=interior,
                description=f"Λ♯_∞({label})",
            )

    crs.wrap(check_cptp, func_description="CPTP")(
        model.generator(), times, tolerances=tols
    )
    crs.wrap(check_generator_encoding, func_description="Generator encoding")(
        model, tolerances=tols
    )
    crs.wrap(check_adjoint_encoding, func_description="Adjoint generator")(
        model, tolerances=tols
    )
    crs.wrap(check_duality, func_description="Duality")(
        model, times, tolerances=tols, seed=seed
    )
    crs.wrap(check_kernel, func_description="Kernel of L♯")(model, tolerances=tols)

    if model.decoherence is not None:
        crs.wrap(check_decoherence_matrix, func_description="Decoherence matrix")(
            model, times
        )
        if model.dim <= MAX_PRODUCT_CHECK_DIM:
            crs.wrap(
                check_decoherence_products,
                func_description="Deformed products of matrix units",
            )(model, times, tolerances=tols)

    if model.name == "discrete-position":
        crs.wrap(check_schwinger_relation, func_description="Schwinger relation")(
            model, times, tolerances=tols
        )

    if model.name in TRUNCATED_MODELS:
        crs.wrap(check_truncation_convergence, func_description="Truncation study")(
            model, truncation_pair, scaled_times
        )

    return crs
