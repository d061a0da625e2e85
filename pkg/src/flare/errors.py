"""Exception types shared across the package."""


class FlareError(Exception):
    """Base class for all errors raised by this package."""


class SchemaMismatch(FlareError):
    """A vector does not conform to the schema it is used with."""


class MismatchedTarget(FlareError):
    """Distance requested between vectors with different target attributes."""


class UndefinedDistance(FlareError):
    """Distance from a vector with no asserted premise cell is undefined."""


class TargetUnasserted(FlareError):
    """Concordance requires both target values to be asserted."""


class WouldCoverEverything(FlareError):
    """Dropping the last asserted premise cell would cover every vector."""


class NonMonotonicAssertion(FlareError):
    """An already-asserted cell was about to be overwritten during reasoning."""


class ParseError(FlareError):
    """Malformed text input; carries a location when one is known."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class DomainError(ParseError):
    """A value lies outside its attribute's domain."""


class ClauseSyntaxError(ParseError):
    """Malformed literal or clause."""


class UnsupportedClause(ParseError):
    """Clause is syntactically valid but outside the supported fragment."""


class InconsistentArity(ParseError):
    """The same predicate was used with one and two arguments."""
