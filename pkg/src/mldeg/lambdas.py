"""Inductive computation of the stratum-characteristic sequences.

For each row count m >= 2 there is an integer sequence
``lambda_1, ..., lambda_(m-1)`` (the Euler characteristics of the strata of
rank-2 column-normalized matrices, stratified by the number of excluded
fiber points) that determines the Euler characteristic of the open rank-2
locus for every column count, and with it every ML degree with min(m, n) = m.

The sequence for m is obtained from the sequences for 2..m-1 by solving an
exact linear system: one equation per column count n = 2..m relates the known
ML degree of the (m, n) model to the unknown lambda values, the last entry is
pinned to (m-1) * m!, and the diagonal ML degree rides along as the final
unknown.  The system matrix is a shifted Vandermonde block and is provably
nonsingular, so a singular solve here can only mean corrupted inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import InvalidShapeError
from .exact import ExactMatrix, solve_exact_linear


@dataclass(frozen=True)
class LambdaSequence:
    """Row m of the table: values = (lambda_1, ..., lambda_(m-1)).

    ``ml_degree_diagonal`` is the ML degree of the square (m, m) model, which
    the inductive solve produces as a byproduct; it is stored here so the
    engine has a single source of truth for diagonal entries.
    """

    m: int
    values: tuple[int, ...]
    ml_degree_diagonal: int

    def __post_init__(self):
        if self.m < 2:
            raise InvalidShapeError(f"lambda sequences start at m = 2, got {self.m}")
        if len(self.values) != self.m - 1:
            raise InvalidShapeError(
                f"sequence for m = {self.m} needs {self.m - 1} values, "
                f"got {len(self.values)}"
            )

    def coefficients(self) -> tuple[Fraction, ...]:
        """The rationals lambda_i / (i + 1), i = 1..m-1."""
        return tuple(Fraction(v, i + 1) for i, v in enumerate(self.values, start=1))

    def coefficient_sum(self) -> Fraction:
        return sum(self.coefficients(), Fraction(0))


@dataclass(frozen=True)
class LambdaTable:
    """Sequences for m = 2..m_max, one row each, computed exactly once."""

    rows: tuple[LambdaSequence, ...]

    @property
    def m_max(self) -> int:
        return self.rows[-1].m

    def row(self, m: int) -> LambdaSequence:
        if not 2 <= m <= self.m_max:
            raise InvalidShapeError(f"table holds m = 2..{self.m_max}, got {m}")
        return self.rows[m - 2]


def _ml_degree_tall(row: LambdaSequence, n: int) -> int:
    """ML degree of the (row.m, n) model for n >= row.m, from the closed form."""
    total = sum(
        (coeff * pow(i, n - 1) for i, coeff in enumerate(row.coefficients(), start=1)),
        Fraction(0),
    )
    if total.denominator != 1:
        raise ArithmeticError(f"non-integer ML degree from sequence m={row.m}, n={n}")
    return int(total)


@lru_cache(maxsize=None)
def _row(m: int) -> LambdaSequence:
    if m == 2:
        return LambdaSequence(2, (2,), 1)

    last = (m - 1) * factorial(m)
    # Known off-diagonal ML degrees of the (m, n) models for n = 2..m-1,
    # obtained through the m <-> n symmetry from previously computed rows.
    known = {2: 1}
    for n in range(3, m):
        known[n] = _ml_degree_tall(_row(n), m)

    def weight(n: int, i: int) -> Fraction:
        return Fraction((-1) ** (n - 1) - pow(i, n - 1), i + 1)

    # Unknowns: lambda_1..lambda_(m-2), then the diagonal ML degree.
    size = m - 1
    matrix_rows = []
    rhs = []
    for n in range(2, m + 1):
        coeff_row = [weight(n, i) for i in range(1, m - 1)]
        coeff_row.append(Fraction(1) if n == m else Fraction(0))
        matrix_rows.append(coeff_row)
        target = Fraction((-1) ** (m + n - 1) * (n - 1)) - weight(n, m - 1) * last
        if n < m:
            target -= known[n]
        rhs.append(target)
    assert len(matrix_rows) == size

    solution = solve_exact_linear(ExactMatrix.from_rows(matrix_rows), rhs)
    values = []
    for entry in solution[:-1]:
        if entry.denominator != 1:
            raise ArithmeticError(f"non-integer stratum characteristic at m={m}")
        values.append(int(entry))
    values.append(last)
    diagonal = solution[-1]
    if diagonal.denominator != 1 or diagonal < 1:
        raise ArithmeticError(f"invalid diagonal ML degree at m={m}: {diagonal}")

    seq = LambdaSequence(m, tuple(values), int(diagonal))
    _check_row(seq)
    return seq


def _check_row(seq: LambdaSequence) -> None:
    """Live invariants on every computed row; failure means corruption."""
    m = seq.m
    if seq.values[-1] != (m - 1) * factorial(m):
        raise ArithmeticError(f"last value of row m={m} violates (m-1)*m!")
    if sum(seq.values) != 1 + (-1) ** m:
        raise ArithmeticError(f"value sum of row m={m} violates 1 + (-1)^m")
    if seq.coefficient_sum() != (-1) ** m * (m - 1):
        raise ArithmeticError(f"coefficient sum of row m={m} violates (-1)^m (m-1)")


def compute_lambda(m: int) -> LambdaSequence:
    """The sequence for row count m (m >= 2), memoized across calls."""
    if not isinstance(m, int) or m < 2:
        raise InvalidShapeError(f"m must be an integer >= 2, got {m!r}")
    return _row(m)


def lambda_table(m_max: int) -> LambdaTable:
    if not isinstance(m_max, int) or m_max < 2:
        raise InvalidShapeError(f"m_max must be an integer >= 2, got {m_max!r}")
    # Build ascending so each row finds its predecessors already cached.
    return LambdaTable(tuple(_row(m) for m in range(2, m_max + 1)))
