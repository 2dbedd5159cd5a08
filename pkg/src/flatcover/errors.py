"""Exception types raised across the package."""

from __future__ import annotations


class FlatCoverError(Exception):
    """Base class for all errors raised by flatcover."""


class MatroidError(FlatCoverError, ValueError):
    """A base family or certificate does not describe a matroid."""


class EmptyFamily(MatroidError):
    def __init__(self) -> None:
        super().__init__("base family is empty")


class WrongCardinality(MatroidError):
    def __init__(self, mask: int, r: int) -> None:
        self.mask = mask
        self.r = r
        super().__init__(f"set {mask:#x} does not have cardinality {r}")


class ExchangeViolation(MatroidError):
    """Basis exchange fails for ``(B, B2, e)``: no ``f`` in ``B2 - B`` makes ``B - e + f`` a basis."""

    def __init__(self, b: int, b2: int, e: int) -> None:
        self.b = b
        self.b2 = b2
        self.e = e
        super().__init__(f"exchange fails for B={b:#x}, B'={b2:#x}, e={e}")


class InvalidCertificate(MatroidError):
    pass


class PreconditionViolated(FlatCoverError, ValueError):
    pass


class NotDependent(PreconditionViolated):
    pass


class NotIsolated(PreconditionViolated):
    def __init__(self, mask: int) -> None:
        self.mask = mask
        super().__init__(f"non-basis {mask:#x} has a neighbouring non-basis")


class RankOutOfRange(PreconditionViolated):
    pass


class EmptyInput(PreconditionViolated):
    pass


class ZeroDegree(PreconditionViolated):
    pass


class ResidualOutsideA(PreconditionViolated):
    pass


class TooLarge(FlatCoverError):
    """The requested exhaustive computation exceeds its size cap."""


class SideConditionUnmet(FlatCoverError):
    """A finite-n bound chain is evaluated outside the range where it is valid."""
