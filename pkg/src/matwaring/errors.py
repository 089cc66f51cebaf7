"""Exception hierarchy shared by all modules."""


class WaringError(Exception):
    """Base class for every error raised by matwaring."""


class NotPrime(WaringError, ValueError):
    pass


class BadModulus(WaringError, ValueError):
    pass


class DivideByZero(WaringError, ZeroDivisionError):
    pass


class NotMonic(WaringError, ValueError):
    pass


class Singular(WaringError, ArithmeticError):
    pass


class NotSplit(WaringError, ArithmeticError):
    """Characteristic polynomial has an irreducible factor of degree > 1."""


class NotDiagonalizable(WaringError, ArithmeticError):
    """Some eigenspace is smaller than the multiplicity of its eigenvalue."""


class NeedLargerField(WaringError):
    """A construction that is only guaranteed for large q failed."""


class NoRepresentation(NeedLargerField):
    """The element is not a sum of two k-th powers in this field."""


class NoSolution(NeedLargerField):
    """No constrained pair exists for the requested parameters."""


class NotCompanion(WaringError, ValueError):
    pass


class TooLarge(WaringError):
    """Exhaustive enumeration would exceed the configured guard."""


class ShapeMismatch(WaringError, ValueError):
    pass


class FieldMismatch(WaringError, ValueError):
    pass


class InternalVerificationError(WaringError, AssertionError):
    """An engine produced a decomposition that does not re-verify."""


class ParseError(WaringError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
