"""Exception hierarchy shared by every module."""


class CompseriesError(Exception):
    """Base class for all errors raised by this package."""


class CapacityError(CompseriesError):
    """A configured size cap (element cap, subgroup-enumeration cap, sweep cap) was exceeded."""


class DomainError(CompseriesError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class SpecParseError(CompseriesError, ValueError):
    """A group-spec string failed to parse.

    ``position`` is the character offset of the failure in the input text.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
