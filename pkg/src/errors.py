"""
Exceptions - FSW Embedding Toolkit

Every error raised on purpose by the library derives from FSWError, so that
callers (and the command line) can tell data problems from programming bugs.
"""

from pathlib import Path
from typing import Optional, Union


class FSWError(ValueError):
    """Base class of all library errors."""


class MeasureError(FSWError):
    """Invalid points or weights, empty multiset, or undefined normalization."""


class DimensionMismatchError(FSWError):
    """Ambient dimensions or embedding lengths do not agree."""


class SupportTooLargeError(FSWError):
    """Input exceeds the exact solver's desk-scale guard."""


class CollinearityError(FSWError):
    """Support points do not lie on one common line through the origin."""


class TieError(FSWError):
    """
    Projected support values coincide, so the embedding is not differentiable.

    Attributes:
        direction: Index k of the offending direction
    """

    def __init__(self, direction: int, message: Optional[str] = None):
        self.direction = direction
        super().__init__(
            message or f"tied projected values along direction {direction}; "
                       "the derivative is undefined on the tie set"
        )


class PointCloudParseError(FSWError):
    """
    A point-cloud CSV file could not be parsed.

    Attributes:
        path: File being parsed
        line: 1-based line number of the offending row (header is line 1)
    """

    def __init__(self, path: Union[str, Path], line: int, reason: str):
        self.path = Path(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")
