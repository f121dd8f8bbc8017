"""Exception taxonomy shared by every module and mapped to CLI exit codes."""


class PermTriplesError(Exception):
    """Base class for all errors raised by permtriples."""


class InputError(PermTriplesError, ValueError):
    """Malformed or inconsistent input (exit status 2)."""


class CycleParseError(InputError):
    """Cycle notation that cannot be parsed; ``position`` is a 0-based offset."""

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class CapacityError(PermTriplesError):
    """A requested enumeration exceeds the configured bound (exit status 3)."""


class TripleError(InputError):
    """A (G, H) pair that does not form a valid triple."""


class NotTransitiveError(TripleError):
    pass


class NotInStabilizerError(TripleError):
    pass


class NotNormalError(TripleError):
    pass


class InvariantError(PermTriplesError):
    """An internal cross-check disagreed with the primary computation."""
