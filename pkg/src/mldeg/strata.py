"""Exact classification of two-column rank-2 matrices by fiber topology.

A valid point is an m x 2 matrix with nonzero Gaussian-rational entries whose
columns each sum to 1 and are distinct (given unit column sums, distinctness
is the same as rank 2).  Extending such a matrix by a third column with unit
sum confines the new column to the affine line T * col1 + (1 - T) * col2; the
entry-nonzero condition excludes the finitely many parameter values
-b2 / (b1 - b2), one for each row where the columns differ.  The fiber is the
complex line minus that excluded set, so its Euler characteristic is
1 - #excluded, and the stratum index k = #excluded - 1 ranges over 0..m-1.

Everything is exact: excluded values are deduplicated by canonical equality,
never by an epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ColumnsEqualError,
    ColumnSumNotOneError,
    DimensionMismatchError,
    InvalidShapeError,
    UnsupportedArrangementError,
    ZeroEntryError,
)
from .exact import ExactMatrix, GaussianRational


@dataclass(frozen=True)
class WTwoMatrix:
    """A validated m x 2 point: nonzero entries, unit column sums, rank 2."""

    m: int
    col1: tuple[GaussianRational, ...]
    col2: tuple[GaussianRational, ...]


@dataclass(frozen=True)
class FiberClass:
    """Excluded parameter values of one fiber and the derived invariants."""

    points: frozenset[GaussianRational]
    chi: int
    stratum_k: int


def validate_w2(matrix: ExactMatrix) -> WTwoMatrix:
    if matrix.cols != 2 or matrix.rows < 2:
        raise DimensionMismatchError(
            f"membership needs an m x 2 matrix with m >= 2, got "
            f"{matrix.rows}x{matrix.cols}"
        )
    for i, row in enumerate(matrix.entries):
        for j, entry in enumerate(row):
            if not entry:
                raise ZeroEntryError(i, j)
    one = GaussianRational(Fraction(1))
    for j in range(2):
        total = sum(matrix.column(j), GaussianRational(Fraction(0)))
        if total != one:
            raise ColumnSumNotOneError(j, str(total))
    col1, col2 = matrix.column(0), matrix.column(1)
    if col1 == col2:
        raise ColumnsEqualError()
    return WTwoMatrix(matrix.rows, col1, col2)


def fiber_points(x: WTwoMatrix) -> frozenset[GaussianRational]:
    """The excluded parameter values -b2 / (b1 - b2) over rows with b1 != b2."""
    excluded = {
        -b2 / (b1 - b2) for b1, b2 in zip(x.col1, x.col2) if b1 != b2
    }
    assert excluded, "distinct unit-sum columns must differ in some row"
    return frozenset(excluded)


def fiber_euler_char(x: WTwoMatrix) -> FiberClass:
    points = fiber_points(x)
    return FiberClass(points=points, chi=1 - len(points), stratum_k=len(points) - 1)


def arrangement_euler_char(s: int, r: int) -> int:
    """Euler characteristic of affine s-space minus r general-position
    hyperplanes, for the two covered counts r = s + 1 and r = s + 2."""
    if not isinstance(s, int) or s < 1:
        raise InvalidShapeError(f"dimension must be a positive integer, got {s!r}")
    if r == s + 1:
        return (-1) ** s
    if r == s + 2:
        return (-1) ** s * (s + 1)
    raise UnsupportedArrangementError(
        f"covered cases are r = s+1 and r = s+2, got s={s}, r={r}"
    )
