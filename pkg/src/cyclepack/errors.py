"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CyclePackError(Exception):
    """Base class for all package errors."""


class InputError(CyclePackError):
    """Malformed or inconsistent user input (maps to CLI exit code 1)."""


class MalformedRotation(InputError):
    pass


class NotConnected(InputError):
    pass


class NotACycle(InputError):
    pass


class NotLaminar(CyclePackError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class DegenerateFamily(CyclePackError):
    """Two distinct cycles own identical minimal sides."""


class MultiComponentFamily(CyclePackError):
    """A family was classified whose cycles lie in different graph components."""


class CycleNotInFamily(CyclePackError):
    pass


class BudgetExceeded(CyclePackError):
    pass


class UncrossingStalled(CyclePackError):
    pass


class VerificationFailure(CyclePackError):
    """A guarantee or checker failed (maps to CLI exit code 2)."""


class StructureInvariantViolated(VerificationFailure):
    pass


class GuaranteeViolated(VerificationFailure):
    pass


class FeasibilityViolation(VerificationFailure):
    pass


class CheckerFailed(VerificationFailure):
    pass


class SearchExhausted(VerificationFailure):
    pass


class EmptyLevel(CyclePackError):
    pass


class EmptySupport(CyclePackError):
    pass


class PreconditionViolated(CyclePackError):
    pass


class RedundantCyclePresent(CyclePackError):
    pass


class UnknownCycle(CyclePackError):
    pass
