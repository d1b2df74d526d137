"""Exception taxonomy shared across the package.

Precondition violations (the caller asked for something outside a
step hypothesis or a configured cap) are distinct from honest
negative answers (the math says no); the CLI maps the former to exit
code 2 and the latter to exit code 3.
"""

from __future__ import annotations


class SoxpandError(Exception):
    """Base class for package errors."""


class PreconditionError(SoxpandError, ValueError):
    """A stated hypothesis or input contract does not hold."""


class CapExceededError(PreconditionError):
    """An enumeration or construction would exceed a configured cap."""


class MixedFieldError(PreconditionError):
    """Operands belong to different field contexts."""


class NoExpansionError(SoxpandError):
    """No one-dimension expansion exists (a definite negative, not a bug)."""


class DistanceUndefinedError(SoxpandError):
    """Minimum distance requested for the zero code."""


class GramSchmidtBreakdown(SoxpandError):
    """Orthogonalization hit a zero self-inner-product direction.

    Signals the caller to take a short-circuit branch instead; never a
    user-facing failure.
    """
