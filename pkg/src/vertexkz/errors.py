"""Domain errors shared across the package.

Every failure mode named in a module contract maps to one class here so the
CLI can catch `VertexKZError` and turn it into a nonzero exit with a message,
while tests can assert on the specific class.
"""

from __future__ import annotations


class VertexKZError(Exception):
    """Base class for all domain errors raised by this package."""


class NonGenericPointError(VertexKZError):
    """A spectral point sits on a pole of a coefficient formula."""

    def __init__(self, detail: str = ""):
        msg = "non-generic point"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class DegenerateGridError(VertexKZError):
    """Interpolation nodes are not pairwise distinct."""

    def __init__(self) -> None:
        super().__init__("degenerate interpolation grid")


class GridEvaluationError(VertexKZError):
    """The evaluator failed at a tensor-grid point; the point is attached."""

    def __init__(self, point: tuple, cause: BaseException):
        self.point = point
        self.cause = cause
        super().__init__(f"evaluator failed at grid point {point}: {cause}")


class OrientationSelectionError(VertexKZError):
    """Neither domain-wall arrow assignment satisfies the functional equation."""

    def __init__(self) -> None:
        super().__init__("no orientation satisfies the functional equation")


class DegenerateCramerError(VertexKZError):
    """det(W_i) vanished; the point must be excluded from Cramer-based checks."""

    def __init__(self) -> None:
        super().__init__("degenerate Cramer system at this point")


class DegenerateRepresentationError(VertexKZError):
    """det(Y_i) vanished at the point; excluded and reported, never fatal."""

    def __init__(self) -> None:
        super().__init__("determinant representation degenerate at this point")


class CalibrationMismatchError(VertexKZError):
    """The oracle/determinant ratio varied across points or representations."""

    def __init__(self, detail: str = ""):
        msg = "representation mismatch"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)
