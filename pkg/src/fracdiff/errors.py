"""Exception hierarchy shared by every module."""


class FracdiffError(Exception):
    """Base class for all package errors."""


class PoleError(FracdiffError, ArithmeticError):
    """Evaluation at a pole of a meromorphic function."""


class IndeterminateError(FracdiffError, ArithmeticError):
    """A limit that does not exist along the requested path."""


class DomainError(FracdiffError, ValueError):
    """Argument outside the domain of an operation, or a non-finite result."""


class BranchPointError(DomainError):
    """Evaluation at the branch point z = 0."""


class DivergenceError(FracdiffError, ArithmeticError):
    """A series that diverges for the given argument."""


class NoConvergenceError(FracdiffError, ArithmeticError):
    """An iterative procedure hit its cap before reaching tolerance."""


class UnknownFunctionError(FracdiffError, KeyError):
    pass


class ParamError(FracdiffError, ValueError):
    pass


class RecurrenceBreakdownError(FracdiffError, ArithmeticError):
    pass


class StepError(FracdiffError, ValueError):
    pass


class SupportError(FracdiffError, ValueError):
    pass


class QuadratureError(FracdiffError, ArithmeticError):
    pass


class ExtrapolationError(FracdiffError, ArithmeticError):
    pass


class PreconditionError(FracdiffError, ValueError):
    pass


class DegenerateError(FracdiffError, ValueError):
    """Parameter set requires a logarithmic (confluent) expansion."""


class UnknownFormError(FracdiffError, KeyError):
    pass


class UnsupportedError(FracdiffError, ValueError):
    pass


class UnsupportedCompositionError(FracdiffError, ValueError):
    pass


class UnknownIdentifierError(FracdiffError, NameError):
    def __init__(self, name, line=1, column=1):
        self.name = name
        self.line = line
        self.column = column
        super().__init__(f"unknown identifier {name!r} at {line}:{column}")


class ExprSyntaxError(FracdiffError, SyntaxError):
    def __init__(self, msg, line=1, column=1, text=None):
        super().__init__(msg, ("<expr>", line, column, text))
        self.msg = msg
        self.line = line
        self.column = column

    def __str__(self):
        return f"{self.msg} at {self.line}:{self.column}"
