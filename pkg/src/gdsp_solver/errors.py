"""Exception hierarchy for gdsp-solver."""

from typing import Any, Dict, Optional


class GdspError(ValueError):
    """Base class for all toolkit errors."""


class DimensionMismatchError(GdspError):
    """Raised when objects disagree on vertex count, file count or field."""


class HypothesisViolation(GdspError):
    """Raised when a decomposition is asked to run outside its hypotheses.

    Attributes:
        hypothesis: Short name of the violated hypothesis.
        details: Offending indices (e.g. ``{"k": 1, "l": 2, "j": 2}``).
    """

    def __init__(
        self, hypothesis: str, message: str, details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis
        self.details = details or {}


class InvalidCodeError(GdspError):
    """Raised when a code does not satisfy the decodability it is required to."""


class FieldTooSmallError(GdspError):
    """Raised when GF(q) lacks enough distinct evaluation points."""


class InstanceFormatError(GdspError):
    """Raised when an input document cannot be parsed.

    Attributes:
        path: File the document came from.
        location: Field path or line/column of the problem, when known.
    """

    def __init__(self, path: str, message: str, location: Optional[str] = None):
        where = f" at {location}" if location else ""
        super().__init__(f"{path}{where}: {message}")
        self.path = path
        self.location = location
