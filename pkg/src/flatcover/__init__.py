"""Matroid flat covers, Johnson graph vertex-set encodings and matroid counting bounds."""

from .errors import (
    FlatCoverError,
    InvalidCertificate,
    MatroidError,
    PreconditionViolated,
    SideConditionUnmet,
    TooLarge,
)
from .matroid import Matroid, matroid_from_bases

__all__ = [
    "FlatCoverError",
    "InvalidCertificate",
    "Matroid",
    "MatroidError",
    "PreconditionViolated",
    "SideConditionUnmet",
    "TooLarge",
    "matroid_from_bases",
]
__version__ = "0.1.0"
