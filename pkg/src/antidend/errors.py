"""Exception hierarchy shared by every module."""


class AntidendError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(AntidendError, ValueError):
    pass


class FieldMismatch(AntidendError, ValueError):
    pass


class SingularMatrix(AntidendError, ArithmeticError):
    """Raised when an exact inverse is requested of a matrix with zero determinant."""


class BadPrime(AntidendError, ValueError):
    pass


class ScalarSyntaxError(AntidendError, ValueError):
    pass


class UnknownVariant(AntidendError, ValueError):
    pass


class UnknownPattern(AntidendError, ValueError):
    pass


class NotAnAlgebra(AntidendError):
    """A structure failed the axioms it was required to satisfy.

    The failing :class:`~antidend.report.Report` is kept on ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotABialgebra(NotAnAlgebra):
    pass


class NotFactorizable(NotAnAlgebra):
    pass


class NotRotaBaxter(NotAnAlgebra):
    pass


class NotQRB(NotAnAlgebra):
    pass


class NotACocycle(NotAnAlgebra):
    pass


class Degenerate(AntidendError, ArithmeticError):
    pass


class ZeroWeight(AntidendError, ValueError):
    pass


class BudgetExceeded(AntidendError):
    pass


class DocumentError(AntidendError, ValueError):
    pass


class DocumentSyntaxError(DocumentError):
    """Malformed document text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class UnknownKind(DocumentError):
    pass
