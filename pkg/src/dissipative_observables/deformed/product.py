"""
The time-deformed product and commutator
"""

from __future__ import annotations

from dissipative_observables.deformed.context import DeformedAlgebraContext
from dissipative_observables.exceptions import DimensionError
from dissipative_observables.lindblad.superoperator import apply
from dissipative_observables.operators.core import Operator


def _check_dims(
    operation: str, ctx: DeformedAlgebraContext, a: Operator, b: Operator
) -> None:
    dims = [ctx.generator_adjoint.dim, a.shape[0], b.shape[0]]
    if len(set(dims)) != 1:
        raise DimensionError(operation, dims)


def deformed_product(ctx: DeformedAlgebraContext, a: Operator, b: Operator) -> Operator:
    """
    Deformed product A ·_t B = (Λ♯_t)⁻¹(Λ♯_t(A) Λ♯_t(B))

    At t = 0 this is the ordinary product.

    Parameters
    ----------
    ctx
        Context holding Λ♯_t and its inverse

    a
        Left factor

    b
        Right factor

    Returns
    -------
    :
        A ·_t B

    Raises
    ------
    DimensionError
        The operators do not match the context's dimension

    IllConditionedError
        Λ♯_t is too ill-conditioned to invert
    """
    _check_dims("deformed_product", ctx, a, b)
    inverse = ctx.require_inverse()

    return apply(inverse, apply(ctx.forward, a) @ apply(ctx.forward, b))


def deformed_commutator(
    ctx: DeformedAlgebraContext, a: Operator, b: Operator
) -> Operator:
    """
    Deformed commutator [A, B]_t = A ·_t B - B ·_t A

    Evaluated as (Λ♯_t)⁻¹[Λ♯_t(A), Λ♯_t(B)], which is the same thing.

    Raises
    ------
    DimensionError
        The operators do not match the context's dimension

    IllConditionedError
        Λ♯_t is too ill-conditioned to invert
    """
    _check_dims("deformed_commutator", ctx, a, b)
    inverse = ctx.require_inverse()
    a_t = apply(ctx.forward, a)
    b_t = apply(ctx.forward, b)

    return apply(inverse, a_t @ b_t - b_t @ a_t)
