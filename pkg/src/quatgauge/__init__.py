"""Exact arithmetic for quaternion algebras with involution over iterated
Laurent series fields: armature presentations, gauges and residues, and
the descent pipelines that move decompositions across ramified factors."""

from .errors import (
    ContractViolation,
    DegeneratePairingError,
    DomainError,
    FactorBoundError,
    QuatGaugeError,
    ScalarParseError,
    UnsupportedFieldError,
)
from .fields import QQ, PrimeField, Rationals
from .scalars import GradeValue, LaurentField, Scalar

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "PrimeField",
    "Rationals",
    "LaurentField",
    "Scalar",
    "GradeValue",
    "QuatGaugeError",
    "DomainError",
    "UnsupportedFieldError",
    "FactorBoundError",
    "ScalarParseError",
    "DegeneratePairingError",
    "ContractViolation",
    "__version__",
]
