"""Result values of the twisted conjugacy algorithms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .const import INFINITY


@dataclass(frozen=True)
class Witness:
    """An element h with g1 = psi(h) * g2 * phi(h)^-1."""

    element: Any

    @property
    def found(self) -> bool:
        """Return True."""
        return True


@dataclass(frozen=True)
class NotConjugate:
    """The queried elements are not twisted conjugate."""

    @property
    def found(self) -> bool:
        """Return False."""
        return False


NOT_CONJUGATE = NotConjugate()

TwistedResult = Witness | NotConjugate


@dataclass(frozen=True)
class Finite:
    """Representatives of finitely many Reidemeister classes."""

    representatives: tuple[Any, ...]

    @property
    def number(self) -> int:
        """Return the Reidemeister number."""
        return len(self.representatives)

    def is_finite(self) -> bool:
        """Return True."""
        return True


@dataclass(frozen=True)
class Infinite:
    """Infinitely many Reidemeister classes."""

    @property
    def number(self) -> float:
        """Return the infinity marker."""
        return INFINITY

    def is_finite(self) -> bool:
        """Return False."""
        return False


INFINITE = Infinite()

ReidemeisterResult = Finite | Infinite
