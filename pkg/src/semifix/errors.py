"""Exception types shared across the package."""


class DomainError(ValueError):
    """A value does not belong to the carrier of the semiring it was given to."""


class ContextError(ValueError):
    """Series from incompatible variable contexts were combined."""


class DivergenceError(RuntimeError):
    """A fixpoint iteration hit its iteration cap without stabilizing.

    ``last`` holds the final iterate (a tuple of series) and ``iterations``
    the number of right-hand-side applications performed.
    """

    def __init__(self, message, last=None, iterations=0):
        super().__init__(message)
        self.last = last
        self.iterations = iterations


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
