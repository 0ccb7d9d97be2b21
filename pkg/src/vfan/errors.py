"""Exception types shared across the package."""


class SignatureMismatchError(ValueError):
    """Operands live over different ring signatures."""


class ZeroOperandError(ValueError):
    """An operation received the zero operator where nonzero is required."""


class BudgetExceededError(RuntimeError):
    """A step budget ran out.  Carries the partial result, never used silently."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PreconditionError(ValueError):
    """A documented precondition of an operation was violated."""


class ParseError(ValueError):
    """Lexical or syntax error in an operator expression."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
