class StairdistError(Exception):
    ...


class ParseError(StairdistError):
    """Malformed input file or literal."""


class ValidationError(StairdistError):
    """Structurally well-formed input that violates a domain invariant."""


class PreconditionError(StairdistError):
    """An operation was called outside its contract."""
