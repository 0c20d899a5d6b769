"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class HyperellError(Exception):
    """Base class for every error raised by this package."""


class GraphError(HyperellError, ValueError):
    """Malformed graph, missing vertex/edge, or violated precondition."""


class NotMixingError(HyperellError, ValueError):
    pass


class InvalidWitnessError(HyperellError, ValueError):
    """The supplied involution is not a witness of the claimed structure."""


class BudgetExceeded(HyperellError):
    """A complete search ran out of budget before finishing.

    ``partial`` carries whatever was found before the cutoff so callers can
    tell "none exist" from "search truncated".
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class ContractViolation(HyperellError):
    """A structural fact the constructions rely on failed to hold.

    ``lemma`` names the violated fact.
    """

    def __init__(self, lemma: str, message: str):
        super().__init__(f"[{lemma}] {message}")
        self.lemma = lemma


class DrawingError(HyperellError):
    pass


class CrossingError(DrawingError):
    def __init__(self, first, second, where=None):
        super().__init__(f"polylines of edges {first} and {second} intersect at {where}")
        self.edges = (first, second)
        self.point = where


class CertificateError(DrawingError):
    pass


class SymmetryError(DrawingError):
    pass


class GenusError(DrawingError):
    pass


class UnsupportedError(HyperellError):
    pass
