"""Shared exception types."""


class ComplexValidationError(ValueError):
    """A filtered complex violates closure or monotonicity."""


class MissingFaceError(ComplexValidationError):
    """A stored simplex has a face that is not stored."""


class NonMonotoneValueError(ComplexValidationError):
    """A face has a larger filtration value than one of its cofacets."""


class BudgetExceededError(RuntimeError):
    """Simplex enumeration exceeded the configured budget."""


class OmegaEqualsOneError(ValueError):
    """Window delay is undefined when the two frequencies coincide."""


class EmptyAfterFilterError(ValueError):
    """No positive-birth bars remain, so the log-scale comparison is empty."""
