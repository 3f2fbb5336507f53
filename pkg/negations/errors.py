from __future__ import annotations


class NegationError(ValueError):
    """Base class for every error raised by the package."""


class InputError(NegationError):
    """The input is not a valid distribution or is unreadable."""


class LengthError(InputError):
    pass


class RangeError(InputError):
    pass


class SumError(InputError):
    pass


class PointIndexError(InputError, IndexError):
    pass


class LengthMismatchError(InputError):
    pass


class ParseError(InputError):
    pass


class DomainError(NegationError):
    """A parameter lies outside the domain of the operation."""


class DegenerateStatsError(DomainError):
    pass
