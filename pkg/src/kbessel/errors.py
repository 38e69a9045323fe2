"""Exception hierarchy for the k-Bessel numerics."""

from __future__ import annotations


class KBesselError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KBesselError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(KBesselError, ValueError):
    """Arguments are individually valid but inconsistent with each other."""


class UnsupportedError(KBesselError):
    """The requested combination has no implementation (e.g. convex-f bounds)."""


class TruncationError(KBesselError, ArithmeticError):
    """A power series did not meet its stop rule within ``max_terms``."""

    def __init__(self, message: str, last_term: float) -> None:
        super().__init__(message)
        self.last_term = last_term


class PoleError(KBesselError, ArithmeticError):
    """A ratio was requested at or beyond the first zero of its denominator."""


class SearchError(KBesselError, RuntimeError):
    """The sign-change scan ran out of range before finding enough zeros."""


class RefinementError(KBesselError, RuntimeError):
    """A refined root failed its residual check."""
