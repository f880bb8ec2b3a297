"""Exception hierarchy."""


class QuasicobError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPolytopeError(QuasicobError, ValueError):
    """Incidence data does not describe a simple polytope."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class LatticeError(QuasicobError, ValueError):
    pass


class ModelError(QuasicobError, ValueError):
    """A model is malformed or fails a validity requirement of an operation."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(QuasicobError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class DocumentError(QuasicobError, ValueError):
    """An input document is not well-formed."""
