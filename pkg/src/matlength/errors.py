"""Exception types shared across the package."""


class MatLengthError(Exception):
    """Base class for errors raised by matlength."""


class FieldMismatchError(MatLengthError, TypeError):
    """Operands live over different fields."""


class DimensionError(MatLengthError, ValueError):
    """Operands have incompatible sizes."""


class ParseError(MatLengthError, ValueError):
    """Malformed textual input.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ResourceLimitError(MatLengthError, RuntimeError):
    """A computation would exceed its configured budget."""


class NotGeneratingError(MatLengthError, ValueError):
    """The generating set spans a proper subalgebra only."""

    def __init__(self, final_dim, ambient_dim):
        self.final_dim = final_dim
        self.ambient_dim = ambient_dim
        super().__init__(
            f"set does not generate the full algebra: dimension {final_dim} of {ambient_dim}"
        )
