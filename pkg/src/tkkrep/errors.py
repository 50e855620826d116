"""Exception hierarchy shared by all modules."""


class TKKError(Exception):
    """Base class for library errors."""


class DivisionByZero(TKKError, ZeroDivisionError):
    pass


class EmptyAlgebra(TKKError, ValueError):
    pass


class InvalidRank(TKKError, ValueError):
    pass


class SchemaError(TKKError, ValueError):
    pass


class ParityViolation(TKKError, ValueError):
    pass


class NotUnital(TKKError):
    pass


class JordanAxiomFailure(TKKError):
    pass


class InvalidCharacter(TKKError, ValueError):
    pass


class ContextMismatch(TKKError, ValueError):
    pass


class SingularGram(TKKError):
    """A Gram slice is degenerate; ``radical`` holds a basis of its radical."""

    def __init__(self, message, degree=None, radical=None):
        super().__init__(message)
        self.degree = degree
        self.radical = radical or []
