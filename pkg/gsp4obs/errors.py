"""Exception hierarchy for gsp4obs.

Every error raised by the library derives from ``Gsp4ObsError`` (itself a
``ValueError``), so callers can catch one type. The CLI maps these to exit
code 2.
"""

from __future__ import annotations


class Gsp4ObsError(ValueError):
    """Base class for all gsp4obs errors."""


class RealizabilityError(Gsp4ObsError):
    """A root of unity, square root or inverse factorial is not available in the chosen field or group."""


class ConstraintViolation(Gsp4ObsError):
    """A local type descriptor violates the regularity constraint attached to its group."""

    def __init__(self, group: str, constraint: str) -> None:
        self.group = group
        self.constraint = constraint
        super().__init__(f"Group {group} requires {constraint}")


class DescriptorError(Gsp4ObsError):
    """A descriptor document is malformed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class NotSymplecticError(Gsp4ObsError):
    """A matrix is not a symplectic similitude for the standard form J."""


class VerificationFailure(Gsp4ObsError):
    """An identity that is expected to hold failed; carries the witness."""

    def __init__(self, message: str, witness: object = None) -> None:
        self.witness = witness
        super().__init__(message)
