"""Exception types shared across the package."""


class DomainError(ValueError):
    """Arguments outside the convergence/validity region of an operation."""


class PrecisionError(ArithmeticError):
    """The accumulated error bound exceeds the precision contract."""


class NotReducible(ValueError):
    """No exact closed form is available within the supported reduction scope."""


class ReductionError(RuntimeError):
    """An exact linear system turned out rank-deficient or inconsistent."""


class ParseError(ValueError):
    """Corpus DSL syntax error, carrying line/column information."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        loc = f" (line {line}" + (f", col {col})" if col is not None else ")") if line else ""
        super().__init__(message + loc)


class ArityError(ParseError):
    """Wrong number of arguments in a DSL call."""


class UnboundSymbol(ParseError):
    """A symbol used in a DSL expression is not bound by its identity."""
