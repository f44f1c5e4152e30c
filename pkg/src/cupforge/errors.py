"""Exception types shared across the package."""

from __future__ import annotations


class CupforgeError(Exception):
    """Base class.  ``code`` is a short machine-readable reason."""

    code = "error"

    def __init__(self, message: str, code: str | None = None, **detail):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.detail = detail


class ComplexError(CupforgeError):
    code = "complex"


class OrientationError(CupforgeError):
    code = "orientation"


class ActionError(CupforgeError):
    code = "action"


class HypothesisError(CupforgeError):
    """A construction's hypotheses fail; ``detail['items']`` lists which."""

    code = "hypothesis"


class SpecError(CupforgeError):
    code = "spec"
