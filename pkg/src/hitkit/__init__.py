"""hitkit: exact computations with Steinberg summands of polynomial algebras
over finite fields, the associated hit problems and face rings."""

from __future__ import annotations

from .config import LIMITS, Limits
from .errors import DomainError, HitkitError, ResourceError, UsageError
from .field import FieldSpec, get_field
from .linalg import MatrixGF, Subspace, rank, span
from .poly import GLElement, Polynomial
from .report import VerificationReport
from .steenrod import chi_p, quot_dim, steenrod_p

__version__ = "0.1.0"

__all__ = [
    "LIMITS",
    "DomainError",
    "FieldSpec",
    "GLElement",
    "HitkitError",
    "Limits",
    "MatrixGF",
    "Polynomial",
    "ResourceError",
    "Subspace",
    "UsageError",
    "VerificationReport",
    "chi_p",
    "get_field",
    "quot_dim",
    "rank",
    "span",
    "steenrod_p",
]
