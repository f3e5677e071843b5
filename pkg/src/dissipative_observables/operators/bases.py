"""
Operator bases and expansion of operators in them
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg
from attrs import field, frozen

from dissipative_observables.config import Tolerances, resolve_tolerances
from dissipative_observables.exceptions import (
    BasisError,
    DimensionError,
    ExpansionError,
)
from dissipative_observables.operators.core import (
    Operator,
    as_operator,
    max_abs,
    project_interior,
)

PAULI_LABELS: tuple[str, ...] = ("sigma0", "sigma1", "sigma2", "sigma3")
"""Labels of the elements of the Pauli basis"""


def _as_operator_tuple(values: Iterable[npt.ArrayLike]) -> tuple[Operator, ...]:
    return tuple(as_operator(v) for v in values)


@frozen(eq=False)
class OperatorBasis:
    """
    Ordered, linearly independent collection of operators
    """

    elements: tuple[Operator, ...] = field(converter=_as_operator_tuple)
    """Basis elements"""

    labels: tuple[str, ...] = field(converter=tuple)
    """Human-readable label of each element"""

    orthogonal: bool = False
    """
    Whether the elements are orthogonal under the Hilbert-Schmidt inner product

    If `True`, this is checked on construction.
    """

    interior: Optional[int] = None
    """
    If set, only the leading `interior` levels are used when comparing operators

    This is how truncated Fock spaces hide the corrupted boundary.
    """

    tolerances: Optional[Tolerances] = field(default=None, repr=False)
    """Tolerances used for checks (global defaults if not supplied)"""

    def __attrs_post_init__(self) -> None:
        """
        Check the basis invariants

        Raises
        ------
        BasisError
            The basis is empty, has inconsistent labels,
            is linearly dependent or is wrongly flagged as orthogonal

        DimensionError
            The elements do not share a dimension
        """
        if not self.elements:
            msg = "A basis needs at least one element"
            raise BasisError(msg)

        dims = [el.shape[0] for el in self.elements]
        if len(set(dims)) != 1:
            raise DimensionError("OperatorBasis", dims)

        if len(self.labels) != len(self.elements):
            msg = (
                f"Received {len(self.labels)} labels for {len(self.elements)} elements"
            )
            raise BasisError(msg)

        if len(set(self.labels)) != len(self.labels):
            msg = f"Basis labels must be unique. Received {self.labels=}"
            raise BasisError(msg)

        if self.interior is not None and not (1 <= self.interior <= dims[0]):
            msg = f"interior must be between 1 and {dims[0]}. Received {self.interior=}"
            raise BasisError(msg)

        tols = resolve_tolerances(self.tolerances)
        gram = self.gram_matrix()
        singular_values = np.linalg.svd(gram, compute_uv=False)
        if singular_values[-1] <= tols.tol_kernel * singular_values[0]:
            msg = (
                "The basis elements are linearly dependent. "
                f"Gram matrix singular values: {singular_values}"
            )
            raise BasisError(msg)

        if self.orthogonal:
            off_diagonal = gram - np.diag(np.diag(gram))
            if max_abs(off_diagonal) > tols.tol_orth:
                msg = (
                    "The basis is flagged as orthogonal but its Gram matrix "
                    f"has off-diagonal entries up to {max_abs(off_diagonal):.3e}"
                )
                raise BasisError(msg)

    @classmethod
    def from_operators(
        cls,
        elements: Sequence[npt.ArrayLike],
        labels: Sequence[str],
        interior: Optional[int] = None,
        tolerances: Optional[Tolerances] = None,
    ) -> OperatorBasis:
        """
        Initialise, detecting whether the elements are orthogonal

        Parameters
        ----------
        elements
            Basis elements

        labels
            Label of each element

        interior
            Number of leading levels used for comparisons (all if `None`)

        tolerances
            Tolerances to use for the checks

        Returns
        -------
        :
            Initialised basis
        """
        tols = resolve_tolerances(tolerances)
        ops = _as_operator_tuple(elements)
        stacked = np.stack([project_interior(op, interior).ravel() for op in ops])
        gram = stacked.conj() @ stacked.T
        orthogonal = max_abs(gram - np.diag(np.diag(gram))) <= tols.tol_orth

        return cls(
            elements=ops,
            labels=labels,
            orthogonal=bool(orthogonal),
            interior=interior,
            tolerances=tolerances,
        )

    @property
    def dim(self) -> int:
        """Dimension of the underlying Hilbert space"""
        return self.elements[0].shape[0]

    @property
    def size(self) -> int:
        """Number of basis elements"""
        return len(self.elements)

    def projected(self, operator: Operator) -> Operator:
        """
        Project an operator onto the levels this basis compares on
        """
        return project_interior(operator, self.interior)

    def stacked(self) -> npt.NDArray[np.complex128]:
        """
        Projected elements as rows of a `(size, dim**2)` matrix
        """
        return np.stack([self.projected(el).ravel() for el in self.elements])

    def gram_matrix(self) -> npt.NDArray[np.complex128]:
        """
        Gram matrix G_ij = <A_i, A_j> of the (projected) elements
        """
        stacked = self.stacked()

        return stacked.conj() @ stacked.T  # type: ignore[no-any-return]

    def gram_condition(self) -> float:
        """
        Condition number of the Gram matrix

        Coefficients obtained with
        [expand_in_basis][dissipative_observables.operators.bases.expand_in_basis]
        lose roughly `log10` of this many digits.
        """
        return float(np.linalg.cond(self.gram_matrix()))

    def index(self, label: str) -> int:
        """
        Position of the element with a given label

        Raises
        ------
        KeyError
            No element has this label
        """
        try:
            return self.labels.index(label)
        except ValueError as exc:
            msg = f"{label!r} is not in {self.labels=}"
            raise KeyError(msg) from exc

    def element(self, label: str) -> Operator:
        """
        Element with a given label
        """
        return self.elements[self.index(label)]

    def select(self, labels: Sequence[str]) -> OperatorBasis:
        """
        Sub-basis made of the elements with the given labels (in that order)
        """
        return OperatorBasis.from_operators(
            [self.element(label) for label in labels],
            labels=labels,
            interior=self.interior,
            tolerances=self.tolerances,
        )

    def combine(self, coefficients: npt.ArrayLike) -> Operator:
        """
        Re-sum coefficients into an operator, sum_k c_k A_k
        """
        coeffs = np.asarray(coefficients, dtype=np.complex128)

        return np.tensordot(coeffs, np.stack(self.elements), axes=1)  # type: ignore[no-any-return]


def expand_with_residuals(
    operators: Sequence[Operator] | npt.NDArray[np.complex128],
    basis: OperatorBasis,
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.float64]]:
    """
    Expand several operators in a basis, also returning what the basis misses

    The coefficients are the least-squares solution obtained with a Gram-matrix solve.
    Both operators and basis elements are compared on `basis.interior`.

    Parameters
    ----------
    operators
        Operators to expand, shape `(n_ops, dim, dim)`

    basis
        Basis in which to expand

    Returns
    -------
    :
        Coefficients, shape `(n_ops, basis.size)`,
        and the norm of the out-of-span part of each operator, shape `(n_ops,)`

    Raises
    ------
    DimensionError
        The operators and basis have different dimensions
    """
    ops = np.asarray(operators, dtype=np.complex128)
    if ops.shape[1:] != (basis.dim, basis.dim):
        raise DimensionError("expand_in_basis", [ops.shape[1], basis.dim])

    projected = np.stack([basis.projected(op).ravel() for op in ops])
    stacked = basis.stacked()
    gram = stacked.conj() @ stacked.T
    rhs = stacked.conj() @ projected.T
    coefficients = scipy.linalg.solve(gram, rhs, assume_a="her").T
    residuals = np.linalg.norm(projected - coefficients @ stacked, axis=1)

    return coefficients, residuals


def expand_in_basis(
    operator: Operator,
    basis: OperatorBasis,
    tolerances: Optional[Tolerances] = None,
) -> npt.NDArray[np.complex128]:
    """
    Coefficients of an operator in a basis

    Parameters
    ----------
    operator
        Operator to expand

    basis
        Basis in which to expand

    tolerances
        Tolerances to use (`tol_expand` bounds the relative reconstruction residual)

    Returns
    -------
    :
        Coefficients c_k such that A = sum_k c_k basis.elements[k]

    Raises
    ------
    DimensionError
        `operator` and `basis` have different dimensions

    ExpansionError
        `operator` does not lie in the span of `basis`
    """
    tols = resolve_tolerances(tolerances)
    coefficients, residuals = expand_with_residuals([operator], basis)
    allowed = tols.tol_expand * float(np.linalg.norm(basis.projected(operator)))
    if residuals[0] > allowed:
        raise ExpansionError(residual=float(residuals[0]), tolerance=allowed)

    return coefficients[0]  # type: ignore[no-any-return]


def pauli_basis() -> OperatorBasis:
    """
    Pauli basis {σ0, σ1, σ2, σ3} with σ0 the identity
    """
    sigma0 = np.eye(2, dtype=np.complex128)
    sigma1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sigma2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sigma3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)

    return OperatorBasis(
        elements=(sigma0, sigma1, sigma2, sigma3),
        labels=PAULI_LABELS,
        orthogonal=True,
    )


def matrix_unit_label(m: int, n: int, d: int) -> str:
    """
    Label of the matrix unit |m><n| in dimension `d`
    """
    if d <= 10:  # noqa: PLR2004
        return f"E{m}{n}"

    return f"E{m},{n}"


def matrix_unit(m: int, n: int, d: int) -> Operator:
    """
    Matrix unit |m><n| (0-indexed)
    """
    res = np.zeros((d, d), dtype=np.complex128)
    res[m, n] = 1.0

    return res


def matrix_unit_basis(d: int) -> OperatorBasis:
    """
    The d² matrix units |m><n| in row-major (m, n) order

    Parameters
    ----------
    d
        Hilbert space dimension

    Returns
    -------
    :
        Orthonormal basis of matrix units
    """
    if d < 1:
        msg = f"d must be at least 1. Received {d=}"
        raise ValueError(msg)

    return OperatorBasis(
        elements=tuple(matrix_unit(m, n, d) for m in range(d) for n in range(d)),
        labels=tuple(matrix_unit_label(m, n, d) for m in range(d) for n in range(d)),
        orthogonal=True,
    )


def position_operator(d: int) -> Operator:
    """
    Discrete position operator X = sum_{m=1}^{d} m |m><m|

    Kets are 0-indexed, so slot `j` holds the eigenvalue `j + 1`.
    """
    return np.diag(np.arange(1, d + 1)).astype(np.complex128)


def schwinger_pair(d: int) -> tuple[Operator, Operator]:
    """
    Schwinger's clock and shift unitaries

    U = sum_m λ^m |m><m| and V = sum_k λ^{-k} |k~><k~| with λ = exp(2πi/d),
    m, k = 1, ..., d stored in 0-indexed slots.
    The momentum kets |k~> = d^{-1/2} sum_m λ^{km} |m> are the discrete Fourier
    transform of the position kets, with the sign chosen so that
    U^k V^l = λ^{kl} V^l U^k. With this choice V|m> = |m+1> (cyclically).

    Parameters
    ----------
    d
        Hilbert space dimension

    Returns
    -------
    :
        (U, V)
    """
    if d < 2:  # noqa: PLR2004
        msg = f"d must be at least 2. Received {d=}"
        raise ValueError(msg)

    lam = np.exp(2j * np.pi / d)
    labels = np.arange(1, d + 1)
    clock = np.diag(lam**labels)
    fourier = lam ** np.outer(labels, labels) / np.sqrt(d)
    shift = fourier @ np.diag(lam ** (-labels)) @ fourier.conj().T

    return clock.astype(np.complex128), shift.astype(np.complex128)


def schwinger_basis(d: int, include_identity: bool = True) -> OperatorBasis:
    """
    Basis of Schwinger monomials U^k V^l, k, l = 0, ..., d - 1

    Parameters
    ----------
    d
        Hilbert space dimension

    include_identity
        Whether to keep U^0 V^0 = 1

    Returns
    -------
    :
        Orthogonal basis (each element has Hilbert-Schmidt norm² d)
    """
    clock, shift = schwinger_pair(d)
    elements = []
    labels = []
    for k in range(d):
        for l in range(d):  # noqa: E741
            if k == 0 and l == 0 and not include_identity:
                continue

            elements.append(
                np.linalg.matrix_power(clock, k) @ np.linalg.matrix_power(shift, l)
            )
            labels.append(f"U^{k}V^{l}")

    return OperatorBasis.from_operators(elements, labels=labels)
