"""
Exceptions raised across the toolkit.
"""


class FieldError(ValueError):
    """Invalid finite field request."""


class EmbeddingError(FieldError):
    """Element cannot be mapped into the requested field."""


class PolynomialError(ValueError):
    """Polynomial operands are incompatible or forbidden."""


class ShapeError(ValueError):
    """Unsupported level shape or case."""


class SupportCollisionError(ShapeError):
    """Pole or zero meets the support of the level, or P equals Q."""


class DegenerateSpecializationError(ValueError):
    """A specialization of (P, Q) collapses the surface equation."""


class BudgetExceeded(RuntimeError):
    """Configured compute budget exhausted."""


class DegenerateFibrationError(ArithmeticError):
    """The fibration has no elliptic generic fiber."""


class NoPointFound(LookupError):
    """No rational point found within the search bound."""


class NonMinimalModelError(ArithmeticError):
    """Euler number not divisible by 12."""


class PipelineError(Exception):
    """Error raised by a named pipeline stage."""

    def __init__(self, stage, error):
        self.stage = stage
        self.error = error
        super().__init__(f'[{stage}] {error}')
