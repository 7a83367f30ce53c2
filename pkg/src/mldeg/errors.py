"""Exception hierarchy and warning categories.

Every error the library raises deliberately derives from ``MldegError`` so
the CLI can map validation failures to exit code 2 uniformly.
"""

from __future__ import annotations


class MldegError(Exception):
    """Base class for all library errors."""


class InvalidShapeError(MldegError):
    """A model shape (m, n) or size bound is outside the supported range."""


class DimensionMismatchError(MldegError):
    """Matrix/vector dimensions are inconsistent with the operation."""


class SingularMatrixError(MldegError):
    """Exact linear solve on a matrix with determinant zero."""


class UnsupportedArrangementError(MldegError):
    """Arrangement counts outside the two covered general-position cases."""


class W2ValidationError(MldegError):
    """A two-column matrix fails one of the membership conditions."""


class ZeroEntryError(W2ValidationError):
    def __init__(self, row: int, col: int):
        super().__init__(f"entry at row {row}, column {col} is zero")
        self.row = row
        self.col = col


class ColumnSumNotOneError(W2ValidationError):
    def __init__(self, col: int, actual: str):
        super().__init__(f"column {col} sums to {actual}, expected 1")
        self.col = col
        self.actual = actual


class ColumnsEqualError(W2ValidationError):
    def __init__(self):
        super().__init__("the two columns are equal (rank < 2)")


class ShapeMismatchError(MldegError):
    """Data/point shapes disagree with each other or with the model."""


class EmptyDataError(MldegError):
    """A data matrix with total count zero was passed where counts are required."""


class MatrixFormatError(MldegError):
    """A matrix/data file or scalar literal could not be parsed."""


class DegenerateDataWarning(UserWarning):
    """Data is non-generic (zero marginal or singular); counts may be short."""
