"""Exception hierarchy.

``ValidationError`` subclasses signal bad user input (CLI exit code 2);
``CapacityExceeded`` signals a problem too large for the supported bounds
(CLI exit code 3).
"""


class LOError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(LOError, ValueError):
    pass


class CapacityExceeded(LOError):
    pass


class InvalidScenario(ValidationError):
    pass


class InvalidEvent(ValidationError):
    pass


class InvalidBehavior(ValidationError):
    pass


class ScenarioMismatch(ValidationError):
    pass


class InvalidVertex(ValidationError):
    pass


class NotAClique(ValidationError):
    pass


class NotAnLOInequality(ValidationError):
    pass


class InvalidArity(ValidationError):
    pass


class InvalidSymmetry(ValidationError):
    pass


class InvalidParameter(ValidationError):
    pass


class NoViolationInRange(LOError):
    pass


class Infeasible(LOError):
    pass


class Unbounded(LOError):
    pass
