"""
Raw data model of the generator specification file

This only contains the fields, no methods.
The JSON schema is

```
{
    "dim": int,
    "hamiltonian": matrix,
    "jumps": [{"op": matrix, "rate": float}, ...],
    "canonical_basis": {"labels": [...], "elements": [matrix, ...], "interior": int}
}
```

where matrices are nested row-major arrays of [re, im] pairs
and `canonical_basis` is optional.
For conversion to a usable object, see
[`dissipative_observables.io.load_lindblad_spec`][dissipative_observables.io.load_lindblad_spec].
"""  # noqa: E501

from typing import Optional

from attrs import frozen

from dissipative_observables.serialisation import MatrixPairs


@frozen
class JumpOperatorFile:
    """
    Raw data model of a jump operator
    """

    op: MatrixPairs
    """The jump operator"""

    rate: float
    """Its rate"""


@frozen
class OperatorBasisFile:
    """
    Raw data model of an operator basis
    """

    labels: list[str]
    """Label of each element"""

    elements: list[MatrixPairs]
    """Basis elements"""

    interior: Optional[int] = None
    """Number of leading levels used for comparisons (all if not supplied)"""


@frozen
class LindbladSpecFile:
    """
    Raw data model of a generator specification
    """

    dim: int
    """Hilbert space dimension"""

    hamiltonian: MatrixPairs
    """The Hamiltonian"""

    jumps: list[JumpOperatorFile]
    """Jump operators and rates"""

    canonical_basis: Optional[OperatorBasisFile] = None
    """Basis for structure-constant analyses, if one comes with the model"""
