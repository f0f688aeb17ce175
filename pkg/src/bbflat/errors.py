"""Exception hierarchy.

Input-contract violations derive from InputError (CLI exit code 2);
internal consistency failures derive from InvariantError (exit code 1).
"""

from __future__ import annotations


class BBFlatError(Exception):
    pass


class InputError(BBFlatError, ValueError):
    """A precondition on user-supplied data was violated."""


class DimensionMismatch(InputError):
    pass


class DegenerateLattice(InputError):
    def __init__(self, message: str, rank_deficiency: int = 0):
        super().__init__(message)
        self.rank_deficiency = rank_deficiency


class NotPrimitive(InputError):
    pass


class NotIsotropic(InputError):
    pass


class NullFunctional(InputError):
    """The vector pairs to zero with the whole lattice."""


class InvalidPeriod(InputError):
    pass


class SpecialPeriodError(InputError):
    """An operation requiring a non-special period received a special one."""


class SearchBudgetExceeded(BBFlatError):
    pass


class StabilizationError(BBFlatError):
    """Brute-force enumeration ranges hit the cap without the count settling."""


class PrecisionExhausted(BBFlatError):
    """Floating-point work could not be certified; re-run at higher precision."""


class InvariantError(BBFlatError):
    """An internal consistency check failed; this should never happen."""
