class NBanachError(Exception):
    """Base class for every error raised by the library."""


class DimensionMismatchError(NBanachError, ValueError):
    pass


class PreconditionError(NBanachError, ValueError):
    """A hypothesis of an operation does not hold for the given input.

    :param message: human readable description
    :param witness: data showing why the hypothesis fails (JSON-friendly)
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class NonInvertibleError(PreconditionError):
    pass


class NumericalBreakdownError(NBanachError, ArithmeticError):
    pass


class ConfigError(NBanachError):
    def __init__(self, errors: list[str]):
        super().__init__('; '.join(errors))
        self.errors = list(errors)


class ClampWarning(UserWarning):
    """A slightly negative Gram determinant was clamped to zero."""


class TruncationWarning(UserWarning):
    """A series product discarded nonzero coefficients above the degree cap."""
