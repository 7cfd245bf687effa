"""Exception hierarchy shared by every module of the package."""


class WeylError(Exception):
    """Base class for all library errors."""


class DivisionByZero(WeylError, ZeroDivisionError):
    pass


class FieldMismatch(WeylError, ValueError):
    pass


class CharacteristicTooSmall(WeylError, ValueError):
    pass


class ShapeMismatch(WeylError, ValueError):
    pass


class BlockCountMismatch(ShapeMismatch):
    pass


class DuplicatePoints(WeylError, ValueError):
    pass


class InconsistentMatrix(WeylError, ValueError):
    """A matrix is not the evaluation matrix of any operator in the requested bidegree."""


class PreconditionViolated(WeylError, ValueError):
    pass


class ParseError(WeylError, ValueError):
    pass
