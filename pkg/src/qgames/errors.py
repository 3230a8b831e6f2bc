"""Exception types raised across the package."""


class QGamesError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(QGamesError, ValueError):
    pass


class NotUnitary(QGamesError, ValueError):
    pass


class NotNormalized(QGamesError, ValueError):
    pass


class NotDensityMatrix(QGamesError, ValueError):
    pass


class NotSeparable(QGamesError, ValueError):
    pass


class ParamOutOfRange(QGamesError, ValueError):
    pass


class IndexOutOfRange(QGamesError, IndexError):
    pass


class InvalidStrategy(QGamesError, ValueError):
    """Probability vector with negative entries or a sum away from one."""
