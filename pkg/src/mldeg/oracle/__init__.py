"""Numeric verification of ML degrees by counting critical points directly.

Two models are supported at desk scale: the rank-1 independence model of any
shape, whose unique critical point has the closed form
p_ij = (row sum_i)(column sum_j)/total^2, and the 3x3 rank-2 model, whose
critical points are found by damped Newton iteration from many random
complex starts and then filtered, deduplicated, and counted.

The Newton kernel exists twice with identical semantics: a compiled Cython
extension (hot path) and a vectorized numpy fallback, selected at import.
Given the same data, seed and tolerances, a backend's report is deterministic
regardless of thread count: start states are generated from per-start
substreams up front, chunk boundaries are fixed, and accepted points are
canonically sorted before deduplication.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import (
    DegenerateDataWarning,
    EmptyDataError,
    ShapeMismatchError,
)
from ..runtime import parallel_map
from . import _newton_py
from ._system import (
    generate_starts,
    lagrange_residual,
    rank_ratio,
)

try:
    from . import _newton_cy as _compiled
except ImportError:  # pragma: no cover - depends on the build environment
    _compiled = None

#: Accepted endpoints must keep every coordinate above this magnitude.
COORDINATE_FILTER = 1e-8
#: "Rank exactly 2" means second/third singular value ratio above this.
RANK_RATIO_MIN = 1e6
#: Starts are processed in fixed-size blocks (independent of thread count).
CHUNK_SIZE = 512

DEFAULT_NEWTON_TOL = 1e-10
DEFAULT_DEDUP_TOL = 1e-6


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _compiled is not None else ("python",)


def default_backend() -> str:
    return available_backends()[0]


def _resolve_backend(name: str | None):
    chosen = default_backend() if name is None else name
    if chosen == "python":
        return "python", _newton_py.solve_chunk
    if chosen == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled oracle kernel is not available")
        return "compiled", _compiled.solve_chunk
    raise ValueError(f"unknown backend {name!r}")


@dataclass(frozen=True)
class DataMatrix:
    """Grid of nonnegative integer counts with derived marginals."""

    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows) -> "DataMatrix":
        data = tuple(tuple(int(v) for v in row) for row in rows)
        if not data or not data[0]:
            raise ShapeMismatchError("data matrix must be nonempty")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ShapeMismatchError("ragged rows in data matrix")
        if any(v < 0 for row in data for v in row):
            raise ShapeMismatchError("counts must be nonnegative")
        return DataMatrix(data)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.entries)

    @property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.entries))

    @property
    def total(self) -> int:
        return sum(self.row_sums)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.float64)


@dataclass
class ProbabilityPoint:
    """A candidate critical point: complex grid plus its system residual."""

    values: np.ndarray
    residual: float
    boundary: bool = False


@dataclass
class CriticalPointReport:
    accepted: list[ProbabilityPoint]
    rejected: dict[str, int]
    count: int
    seed: int
    starts: int
    newton_tol: float
    dedup_tol: float
    backend: str


@dataclass(frozen=True)
class VerificationReport:
    model: str
    residual: float
    tol: float
    passed: bool


def rank1_mle_exact(u: DataMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """The unique rank-1 critical point, over the rationals."""
    total = u.total
    if total == 0:
        raise EmptyDataError("data matrix has total count zero")
    denominator = total * total
    return tuple(
        tuple(Fraction(rs * cs, denominator) for cs in u.col_sums)
        for rs in u.row_sums
    )


def rank1_mle(u: DataMatrix) -> ProbabilityPoint:
    exact = rank1_mle_exact(u)
    boundary = any(v == 0 for row in exact for v in row)
    values = np.array([[float(v) for v in row] for row in exact], dtype=np.complex128)
    return ProbabilityPoint(
        values=values,
        residual=_rank1_residual(values, u),
        boundary=boundary,
    )


def _rank1_residual(values: np.ndarray, u: DataMatrix) -> float:
    """Max-norm defect of the rank-1 critical-point characterization:
    row sums u_i+/u_++, column sums u_+j/u_++, vanishing 2x2 minors, total 1.
    Scale-free in u."""
    p = np.asarray(values, dtype=np.complex128)
    total = u.total
    worst = abs(p.sum() - 1.0)
    row_target = np.array(u.row_sums, dtype=np.float64) / total
    col_target = np.array(u.col_sums, dtype=np.float64) / total
    worst = max(worst, float(np.abs(p.sum(axis=1) - row_target).max()))
    worst = max(worst, float(np.abs(p.sum(axis=0) - col_target).max()))
    m, n = p.shape
    for i in range(m):
        for k in range(i + 1, m):
            for j in range(n):
                for l in range(j + 1, n):
                    minor = p[i, j] * p[k, l] - p[i, l] * p[k, j]
                    worst = max(worst, abs(minor))
    return float(worst)


def verify_critical_point(point, u: DataMatrix, model: str, tol: float) -> VerificationReport:
    """Re-verify a candidate against the defining equations, independently of
    whatever search produced it (rank-2 multipliers are re-fit by least squares)."""
    values = point.values if isinstance(point, ProbabilityPoint) else np.asarray(point)
    values = np.asarray(values, dtype=np.complex128)
    if model == "rank1":
        if values.shape != (u.rows, u.cols):
            raise ShapeMismatchError(
                f"point is {values.shape}, data is {(u.rows, u.cols)}"
            )
        residual = _rank1_residual(values, u)
    elif model == "rank2_3x3":
        if values.shape != (3, 3) or (u.rows, u.cols) != (3, 3):
            raise ShapeMismatchError("rank2_3x3 needs a 3x3 point and 3x3 data")
        residual = lagrange_residual(
            values.ravel(), u.to_array().ravel()
        )
    else:
        raise ValueError(f"unknown model {model!r}")
    return VerificationReport(model=model, residual=residual, tol=tol, passed=residual < tol)


def _int_det3(u: DataMatrix) -> int:
    ((a, b, c), (d, e, f), (g, h, i)) = u.entries
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _dedup_distance(p: np.ndarray, q: np.ndarray) -> float:
    scale = max(1.0, float(np.abs(p).max()), float(np.abs(q).max()))
    return float(np.abs(p - q).max()) / scale


def count_critical_points_3x3(
    u: DataMatrix,
    starts: int,
    seed: int,
    newton_tol: float = DEFAULT_NEWTON_TOL,
    dedup_tol: float = DEFAULT_DEDUP_TOL,
    backend: str | None = None,
) -> CriticalPointReport:
    """Multi-start count of the 3x3 rank-2 critical points for data u.

    Deterministic given (u, starts, seed, tolerances, backend); the accepted
    count is non-decreasing in ``starts`` for a fixed seed.  Non-generic data
    (zero marginals or a singular count matrix) triggers a
    :class:`DegenerateDataWarning` and the search proceeds.
    """
    if (u.rows, u.cols) != (3, 3):
        raise ShapeMismatchError(f"expected 3x3 data, got {u.rows}x{u.cols}")
    if starts < 0:
        raise ValueError("starts must be >= 0")
    if u.total == 0:
        raise EmptyDataError("data matrix has total count zero")
    if any(v == 0 for v in u.row_sums) or any(v == 0 for v in u.col_sums):
        warnings.warn(
            "data has a zero row or column sum; counts may fall short",
            DegenerateDataWarning,
            stacklevel=2,
        )
    elif _int_det3(u) == 0:
        warnings.warn(
            "data matrix is singular; the count for such non-generic data "
            "can differ from the generic one",
            DegenerateDataWarning,
            stacklevel=2,
        )

    backend_name, solver = _resolve_backend(backend)
    rejected = {
        "on_coordinate_hyperplane": 0,
        "rank_deficient": 0,
        "non_converged": 0,
        "duplicate": 0,
    }
    report = CriticalPointReport(
        accepted=[],
        rejected=rejected,
        count=0,
        seed=seed,
        starts=starts,
        newton_tol=newton_tol,
        dedup_tol=dedup_tol,
        backend=backend_name,
    )
    if starts == 0:
        return report

    flat_u = u.to_array().ravel()
    p0, lm0 = generate_starts(float(u.total), starts, seed)
    blocks = [
        (p0[lo : lo + CHUNK_SIZE], lm0[lo : lo + CHUNK_SIZE])
        for lo in range(0, starts, CHUNK_SIZE)
    ]
    results = parallel_map(
        lambda block: solver(block[0], block[1], flat_u, newton_tol), blocks
    )
    status = np.concatenate([r[0] for r in results])
    states = np.concatenate([r[1] for r in results])
    residuals = np.concatenate([r[2] for r in results])

    candidates = []
    for st, state, res in zip(status, states, residuals):
        if st != 0:
            rejected["non_converged"] += 1
            continue
        p = state[:9]
        if float(np.abs(p).min()) <= COORDINATE_FILTER:
            rejected["on_coordinate_hyperplane"] += 1
        elif rank_ratio(p) <= RANK_RATIO_MIN:
            rejected["rank_deficient"] += 1
        else:
            candidates.append((p, float(res)))

    # Canonical order first, then greedy dedup: the outcome is independent of
    # the order chunks were processed in.
    candidates.sort(
        key=lambda item: tuple(
            part for z in item[0] for part in (z.real, z.imag)
        )
    )
    accepted: list[tuple[np.ndarray, float]] = []
    for p, res in candidates:
        if any(_dedup_distance(p, q) < dedup_tol for q, _ in accepted):
            rejected["duplicate"] += 1
        else:
            accepted.append((p, res))

    report.accepted = [
        ProbabilityPoint(values=p.reshape(3, 3).copy(), residual=res)
        for p, res in accepted
    ]
    report.count = len(report.accepted)
    return report
