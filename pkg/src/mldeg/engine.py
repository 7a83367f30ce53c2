"""ML degrees of the rank-2 mixture models and their Euler-characteristic data.

The central quantity is the ML degree of the variety of m x n matrices of
rank at most 2 inside the distinguished hyperplane (entries and their total
sum nonzero).  Three routes to it live here and are cross-checked in tests:

* the direct formula: ML degree = obstruction - chi, where chi is the Euler
  characteristic of the open rank-exactly-2 locus and the obstruction term
  (-1)^(m+n-1) (min(m,n) - 1) weights the rank-<=-1 stratum;
* the per-m closed form: sum of lambda_i/(i+1) * i^(n-1) over the stratum
  sequence of min(m, n), valid once n >= m;
* a constant-coefficient linear recurrence in n whose characteristic roots
  are -1, 1, 2, ..., m-1.

Shapes with min(m, n) <= 2 have ML degree 1: a rank-1 independence model or
the full hyperplane, both smooth with a unique critical point.  The stratum
sequence for m = 2 is also consistent with the general formulas (the engine
treats it as covered, an extrapolation exercised explicitly in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidShapeError
from .exact import expand_root_product
from .lambdas import LambdaSequence, compute_lambda, lambda_table
from .runtime import parallel_map


@dataclass(frozen=True)
class ModelShape:
    """State counts (m, n) of the two discrete variables."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise InvalidShapeError(f"shape must be integers, got {self!r}")
        if self.m < 1 or self.n < 1:
            raise InvalidShapeError(f"shape must be positive, got ({self.m}, {self.n})")

    def normalized(self) -> tuple[int, int]:
        return (self.m, self.n) if self.m <= self.n else (self.n, self.m)


def _as_shape(shape) -> ModelShape:
    if isinstance(shape, ModelShape):
        return shape
    if isinstance(shape, tuple) and len(shape) == 2:
        return ModelShape(*shape)
    raise InvalidShapeError(f"expected ModelShape or (m, n) pair, got {shape!r}")


@dataclass(frozen=True)
class EulerRecord:
    """The (chi, obstruction, ML degree) triple for one shape.

    Satisfies chi_Y = -ml_degree + obstruction exactly; stores the caller's
    original orientation even though all three values are symmetric.
    """

    shape: ModelShape
    chi_Y: int
    obstruction: int
    ml_degree: int


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Coefficients c_1..c_m with
    t^m - c_1 t^(m-1) - ... - c_m = (t+1) * prod_{r=1}^{m-1} (t - r)."""

    m: int
    c: tuple[int, ...]


@dataclass(frozen=True)
class ClosedForm:
    """Evaluator for the fixed-m closed form, valid for n >= m."""

    m: int
    coeffs: tuple[Fraction, ...]

    def evaluate(self, n: int) -> int:
        if n < self.m:
            raise InvalidShapeError(
                f"closed form for m = {self.m} applies to n >= {self.m}, got {n}"
            )
        total = sum(
            (coeff * pow(i, n - 1) for i, coeff in enumerate(self.coeffs, start=1)),
            Fraction(0),
        )
        assert total.denominator == 1, "closed form must clear denominators"
        return int(total)


@dataclass(frozen=True)
class MLDegreeTable:
    m_min: int
    m_max: int
    n_min: int
    n_max: int
    grid: tuple[tuple[int, ...], ...]

    def entry(self, m: int, n: int) -> int:
        if not (self.m_min <= m <= self.m_max and self.n_min <= n <= self.n_max):
            raise InvalidShapeError(f"({m}, {n}) outside the table range")
        return self.grid[m - self.m_min][n - self.n_min]


def euler_obstruction(shape) -> int:
    """(-1)^(m+n-1) (min(m,n) - 1): the weight of the rank-<=-1 stratum."""
    s = _as_shape(shape)
    if s.m < 2 or s.n < 2:
        raise InvalidShapeError(f"obstruction needs m, n >= 2, got ({s.m}, {s.n})")
    return (-1) ** (s.m + s.n - 1) * (min(s.m, s.n) - 1)


def chi_Y(shape, lambdas: LambdaSequence | None = None) -> int:
    """Euler characteristic of the open rank-exactly-2 locus.

    The stratum index is min(m, n); the exponent is max(m, n).  The rational
    partial sums must combine to an integer — anything else means the lambda
    data is corrupted, and is raised as an ArithmeticError.
    """
    s = _as_shape(shape)
    if s.m < 2 or s.n < 2:
        raise InvalidShapeError(f"chi_Y needs m, n >= 2, got ({s.m}, {s.n})")
    small, large = s.normalized()
    row = lambdas if lambdas is not None else compute_lambda(small)
    if row.m != small:
        raise InvalidShapeError(
            f"lambda sequence is for m = {row.m}, shape needs min(m, n) = {small}"
        )
    sign = (-1) ** (large - 1)
    total = Fraction(0)
    for i, coeff in enumerate(row.coefficients(), start=1):
        total += coeff * (sign - pow(i, large - 1))
    if total.denominator != 1:
        raise ArithmeticError(
            f"chi for ({s.m}, {s.n}) is not an integer: corrupted lambda data"
        )
    return int(total)


def ml_degree(shape) -> int:
    """ML degree for any positive shape; min(m, n) <= 2 short-circuits to 1."""
    s = _as_shape(shape)
    small, large = s.normalized()
    if small <= 2:
        return 1
    row = compute_lambda(small)
    if small == large:
        value = row.ml_degree_diagonal
    else:
        value = euler_obstruction(s) - chi_Y(s, row)
    assert value >= 1, f"ML degree must be positive, got {value} at ({s.m}, {s.n})"
    return value


def euler_record(shape) -> EulerRecord:
    s = _as_shape(shape)
    return EulerRecord(
        shape=s,
        chi_Y=chi_Y(s),
        obstruction=euler_obstruction(s),
        ml_degree=ml_degree(s),
    )


def recurrence_coeffs(m: int) -> RecurrenceCoeffs:
    if not isinstance(m, int) or m < 2:
        raise InvalidShapeError(f"recurrence needs m >= 2, got {m!r}")
    poly = expand_root_product((-1,) + tuple(range(1, m)))
    return RecurrenceCoeffs(m, tuple(-c for c in poly[1:]))


def chi_Y_by_recurrence(m: int, n_max: int) -> tuple[int, ...]:
    """chi values for n = 2..n_max: seeded from the closed formula up to
    n = m + 1, then extended by the order-m linear recurrence."""
    if not isinstance(m, int) or m < 2:
        raise InvalidShapeError(f"recurrence needs m >= 2, got {m!r}")
    if not isinstance(n_max, int) or n_max < 2:
        raise InvalidShapeError(f"n_max must be >= 2, got {n_max!r}")
    # Seeds with n < m normalize through the transposed shape; the value is
    # the same as the fixed-m formula, which holds for every n >= 2.
    seeds = [chi_Y(ModelShape(m, n)) for n in range(2, min(n_max, m + 1) + 1)]
    coeffs = recurrence_coeffs(m).c
    values = list(seeds)
    for n in range(m + 2, n_max + 1):
        nxt = sum(c * values[n - 2 - k] for k, c in enumerate(coeffs, start=1))
        values.append(nxt)
    return tuple(values)


def closed_form(m: int) -> ClosedForm:
    if not isinstance(m, int) or m < 3:
        raise InvalidShapeError(f"closed form needs m >= 3, got {m!r}")
    row = compute_lambda(m)
    # Validity for all n >= m rests on the coefficient-sum identity, which
    # cancels the alternating term; it is enforced on every computed row.
    assert row.coefficient_sum() == (-1) ** m * (m - 1)
    return ClosedForm(m, row.coefficients())


def ml_table(m_max: int, n_max: int) -> MLDegreeTable:
    if not isinstance(m_max, int) or m_max < 2:
        raise InvalidShapeError(f"m_max must be >= 2, got {m_max!r}")
    if not isinstance(n_max, int) or n_max < 2:
        raise InvalidShapeError(f"n_max must be >= 2, got {n_max!r}")
    # Warm every needed stratum sequence before fanning out over cells.
    lambda_table(min(m_max, n_max))
    cells = [(m, n) for m in range(2, m_max + 1) for n in range(2, n_max + 1)]
    flat = parallel_map(ml_degree, cells)
    width = n_max - 1
    grid = tuple(
        tuple(flat[r * width : (r + 1) * width]) for r in range(m_max - 1)
    )
    return MLDegreeTable(2, m_max, 2, n_max, grid)
