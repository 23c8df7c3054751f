"""Exceptions raised by reidemeister."""

from __future__ import annotations

from typing import Any


class ReidemeisterError(Exception):
    """Base class for all reidemeister errors."""


class PresentationError(ReidemeisterError, ValueError):
    """A polycyclic presentation is structurally invalid."""


class InconsistentPresentationError(PresentationError):
    """A polycyclic presentation failed the consistency check."""

    def __init__(self, violations: list[str]) -> None:
        """Store the violations."""
        self.violations = violations
        shown = "; ".join(violations[:3])
        more = f" (+{len(violations) - 3} more)" if len(violations) > 3 else ""
        super().__init__(f"inconsistent presentation: {shown}{more}")


class MorphismError(ReidemeisterError, ValueError):
    """A map does not define a homomorphism."""


class SubgroupNotInvariantError(MorphismError):
    """A subgroup is not mapped into itself."""

    def __init__(self, message: str = "subgroup not invariant") -> None:
        """Initialize with the default message."""
        super().__init__(message)


class QuotientNotAbelianError(ReidemeisterError):
    """A quotient was requested modulo a subgroup not containing G'."""

    def __init__(self, message: str = "quotient not abelian") -> None:
        """Initialize with the default message."""
        super().__init__(message)


class NotInSubgroupError(ReidemeisterError):
    """An element is not a member of the subgroup it is expressed in."""


class InfiniteGroupError(ReidemeisterError):
    """An operation that needs a finite group got an infinite one."""


class EnumerationLimitError(ReidemeisterError):
    """A finite enumeration is larger than the configured cap."""

    def __init__(self, size: int, limit: int) -> None:
        """Store the size and the cap."""
        self.size = size
        self.limit = limit
        super().__init__(f"enumeration of {size} elements exceeds the cap {limit}")


class InfiniteCoincidenceGroupError(ReidemeisterError):
    """A quotient-level coincidence group is infinite."""

    def __init__(self, level: int, subgroup: Any = None) -> None:
        """Store where in the recursion the failure happened."""
        self.level = level
        self.subgroup = subgroup
        super().__init__(f"infinite coincidence group at level {level}")


class ProblemFileError(ReidemeisterError):
    """A problem file could not be read, parsed or validated."""

    def __init__(self, message: str, kind: str, anchor: str | None = None) -> None:
        """Store the failure kind and where it happened."""
        self.kind = kind
        self.anchor = anchor
        self.reason = message
        super().__init__(f"{anchor}: {message}" if anchor else message)


class WitnessVerificationError(ReidemeisterError):
    """A computed witness failed its own equation."""
