"""Centralized numerical tolerances and shared exception types."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle used across the package.

    equality        -- structural float comparisons (probabilities sum to 1, ...)
    optimization    -- inner maximization / LP residuals / indifference band
    identification  -- target accuracy of recovered objects
    strict          -- margin above which a preference counts as strict when
                       searching for violation witnesses
    """

    equality: float = 1e-12
    optimization: float = 1e-9
    identification: float = 1e-3
    strict: float = 1e-6


DEFAULT = Tolerances()


class DomainError(ValueError):
    """A prize falls outside the utility function's domain."""


class RangeError(ValueError):
    """A utility value falls outside the utility function's range."""


class DimensionMismatchError(ValueError):
    """Objects built on different output spaces were combined."""


class SizeLimitError(ValueError):
    """An enumeration would exceed the configured size cap."""


class IdentificationError(RuntimeError):
    """Recovery from a choice oracle failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
