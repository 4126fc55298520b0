"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class HypertoricError(Exception):
    exit_code = 4


class InputError(HypertoricError, ValueError):
    """Malformed input: bad syntax, wrong dimension, zero normal."""

    exit_code = 1


class ParseError(InputError):
    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ValidationError(HypertoricError):
    """The arrangement violates a hypothesis (typically simplicity)."""

    exit_code = 2

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = list(witnesses)


class ResourceError(HypertoricError):
    exit_code = 3


class ContractError(HypertoricError):
    """A precondition of an internal operation was violated."""

    exit_code = 4
