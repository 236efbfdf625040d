"""
Exceptions raised by the schottky package.

Every class derives from a builtin exception so callers can keep catching
``ValueError`` / ``RuntimeError`` / ``KeyError`` as usual.
"""

from typing import Sequence


class ParameterError(ValueError):
    "Parameters outside the bounds an operation accepts"


class AffineMapError(ValueError):
    "Raised when an isometric circle is requested for a map with c = 0"


class ParseError(ValueError):
    "Malformed rational, point or description document"


class NotReducedError(ValueError):
    "A word containing an adjacent pair (k, -k)"


class UnknownIndexError(KeyError):
    "A letter that is not an index of the description"


class ConsistencyError(RuntimeError):
    "Internal consistency check failed (indicates a builder bug)"


class ReductionBudgetError(RuntimeError):
    """
    Ford reduction ran out of iterations.

    Args:
        word: letters applied so far, most recent first
        point: last point reached
    """

    def __init__(self, message: str, word: Sequence[int], point):
        super().__init__(message)
        self.word = tuple(word)
        self.point = point
