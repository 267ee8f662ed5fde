# eqnv/core/errors.py
from typing import Any, Dict, Optional


class EqnvError(Exception):
    """Base class for all toolkit errors.

    Attributes:
        message (str, optional): Human readable description.
        details (dict, optional): Structured context (offending field, values).
    """
    def __init__(self, message: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self):
        text = self.message if self.message else "An eqnv error occurred"
        if self.details:
            extra = ", ".join(f"{k}={v}" for k, v in sorted(self.details.items()))
            return f"{text} ({extra})"
        return text


class ValidationError(EqnvError):
    """Input data violates a documented precondition."""
    pass


class DimensionMismatchError(ValidationError):
    """Vectors of different dimensions were combined."""
    pass


class EmptyInputError(ValidationError):
    """An operation that needs at least one point received none."""
    pass


class FanError(ValidationError):
    """The fan is malformed (non-primitive or duplicate rays, bad cone indices)."""
    pass


class NotSmoothError(FanError):
    """A maximal cone is not unimodular."""
    pass


class NotCompleteError(FanError):
    """The fan does not cover the whole space."""
    pass


class ProblemFileError(ValidationError):
    """A problem file could not be parsed (bad JSON, bad rational, bad index)."""
    pass


class LinearProgramError(EqnvError):
    """The exact simplex solver reached a state that should be impossible."""
    pass


class InternalInconsistencyError(EqnvError):
    """A proved guarantee failed; this always indicates a bug in the toolkit."""
    pass


class ConfigurationError(EqnvError):
    """The engine was not configured correctly."""
    pass
