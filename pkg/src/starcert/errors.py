"""Exception hierarchy.

Every error raised on purpose by the package derives from ``StarcertError``
so callers (the CLI in particular) can separate usage/numerical failures
from programming bugs.
"""


class StarcertError(Exception):
    pass


class DivisionByZeroConstantTerm(StarcertError, ZeroDivisionError):
    pass


class NonvanishingConstantTerm(StarcertError, ValueError):
    pass


class BranchPointAtOrigin(StarcertError, ValueError):
    pass


class RadiusOutOfRange(StarcertError, ValueError):
    pass


class ProfileNotNormalized(StarcertError, ValueError):
    pass


class NotNormalized(StarcertError, ValueError):
    pass


class PoleSuspected(StarcertError, ArithmeticError):
    """f or f' (numerically) vanishes at ``z``, so the quotients blow up."""

    def __init__(self, message, z=None):
        super().__init__(message)
        self.z = z


class ArgOfZero(StarcertError, ValueError):
    pass


class ParameterOutOfRange(StarcertError, ValueError):
    pass


class DegenerateAngle(StarcertError, ValueError):
    pass
