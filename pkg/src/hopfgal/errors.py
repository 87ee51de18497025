"""Shared exception types."""


class SizeLimitError(RuntimeError):
    """A construction exceeded its configured size bound."""


class ValidationError(ValueError):
    """Input data violates a structural requirement."""


class NotSubsetError(ValidationError):
    """A subgroup argument is not contained where it must be."""


class NotNormalError(ValidationError):
    """A subgroup argument is not normal where it must be."""


class NotAbelianError(ValidationError):
    """A quotient that must be abelian is not."""


class InternalCheckError(AssertionError):
    """Two independent routes to the same value disagreed.

    This signals a bug in the engine, never bad user input.
    """
