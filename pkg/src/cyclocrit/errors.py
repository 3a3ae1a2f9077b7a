"""Exception types shared across the package.

Validation and bound errors are usage-level (CLI exit code 1); mismatch
errors mean two exact computations disagreed and always indicate a bug
somewhere (CLI exit code 2).
"""


class CyclocritError(Exception):
    """Base class for all package errors."""


class NotPrimeError(CyclocritError):
    pass


class NotPrimitiveError(CyclocritError):
    pass


class DisconnectedError(CyclocritError):
    pass


class BoundExceededError(CyclocritError):
    """A requested computation exceeds a configured size bound."""


class FactorizationError(BoundExceededError):
    """An integer resisted factorization within the configured effort."""


class ZeroElementError(CyclocritError):
    """A multiplicative-only operation was applied to zero."""


class ZeroResidueError(CyclocritError):
    """Digit expansion requested for a residue divisible by q-1."""


class UndefinedSumError(CyclocritError):
    """Carry count requested for a pair whose sum is divisible by q-1."""


class BadResidueError(CyclocritError):
    """The index-3 pipeline needs p congruent to 2 mod 3."""


class ConservationError(CyclocritError):
    """Multiplicity output violates the count/valuation conservation pair."""


class PrecisionError(CyclocritError):
    """Ring precision too small to resolve a required valuation."""


class SrgViolationError(CyclocritError):
    pass


class MismatchError(CyclocritError):
    """Two independent exact computations disagreed."""


class MethodMismatchError(MismatchError):
    """Formula pipeline and brute-force oracle produced different groups."""
