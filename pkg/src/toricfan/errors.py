"""Exception hierarchy shared by all modules."""


class ToricFanError(Exception):
    """Base class for every error raised by this package."""


class ZeroVectorError(ToricFanError):
    """An operation received the zero vector where a nonzero one is required."""


class DimensionMismatchError(ToricFanError):
    """Vector or matrix sizes are inconsistent with the ambient dimension."""


class FanParseError(ToricFanError):
    """Base class for fan-file parsing failures."""


class FanSyntaxError(FanParseError):
    """Malformed fan-file line; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DuplicateNameError(FanParseError):
    """Two ray generators share a name."""


class UnknownRayError(FanParseError):
    """A cone references a ray name or index that does not exist."""


class CenterNotInFanError(ToricFanError):
    """The requested subdivision center is not a cone of the fan."""


class CenterTooSmallError(ToricFanError):
    """Subdivision centers must have at least two rays."""


class NameCollisionError(ToricFanError):
    """The requested new ray name is already taken."""


class NoBlowdownRelationError(ToricFanError):
    """No relation of the shape x1+...+xh = ray targets the requested ray."""


class StarConditionViolatedError(ToricFanError):
    """A contraction failed: some cone around the ray misses the required rays.

    ``witnesses`` lists every offending maximal cone (as index tuples);
    ``witness`` is the first of them.
    """

    def __init__(self, message: str, witnesses):
        super().__init__(message)
        self.witnesses = tuple(witnesses)

    @property
    def witness(self):
        return self.witnesses[0]


class ResultInvalidError(ToricFanError):
    """A contraction produced a fan that fails revalidation."""


class NotARefinementError(ToricFanError):
    """Factorization requested between fans that are not a refinement pair."""


class InternalInconsistencyError(ToricFanError):
    """The fan violates an axiom that earlier validation should have caught."""


class InvalidDimensionError(ToricFanError):
    """A construction was requested in a nonsensical dimension."""


class UnsupportedDimensionError(ToricFanError):
    """Enumeration is not implemented for the requested dimension."""
