"""Exact scalars and dense exact linear algebra.

Integers are Python ints (unbounded), rationals are ``fractions.Fraction``
(canonical on construction: positive denominator, reduced, so equality is
structural), and :class:`GaussianRational` adds an exact rational imaginary
part.  No floating point enters any code path in this module.

The elimination routines are fraction-free: rows are scaled to integer (or
Gaussian-integer) form and reduced with the division-deferred two-term update
``(pivot*a - factor*b) // previous_pivot``, whose division is exact because
every intermediate entry is a minor of the scaled input.  This keeps the
working entries integral instead of paying gcd reductions on every update.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatchError, MatrixFormatError, SingularMatrixError


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(Fraction(value))
        if isinstance(value, str):
            return GaussianRational.from_literal(value)
        raise TypeError(f"cannot interpret {value!r} as an exact scalar")

    @staticmethod
    def from_literal(text: str) -> "GaussianRational":
        """Parse literals like ``-3``, ``5/2``, ``i``, ``-7/9i``, ``1/2+3/4i``."""
        s = text.strip().replace(" ", "")
        if not s:
            raise MatrixFormatError("empty scalar literal")
        # Split into at most two signed terms; signs inside a/b cannot occur
        # mid-token, so any '+'/'-' past position 0 starts the second term.
        split = None
        for pos in range(1, len(s)):
            if s[pos] in "+-":
                split = pos
                break
        parts = [s[:split], s[split:]] if split is not None else [s]
        re = im = None
        for part in parts:
            imaginary = part.endswith(("i", "I"))
            core = part[:-1] if imaginary else part
            if imaginary and core in ("", "+"):
                value = Fraction(1)
            elif imaginary and core == "-":
                value = Fraction(-1)
            else:
                try:
                    value = Fraction(core)
                except (ValueError, ZeroDivisionError) as exc:
                    raise MatrixFormatError(f"bad scalar literal {text!r}") from exc
            if imaginary:
                if im is not None:
                    raise MatrixFormatError(f"two imaginary terms in {text!r}")
                im = value
            else:
                if re is not None:
                    raise MatrixFormatError(f"two real terms in {text!r}")
                re = value
        return GaussianRational(re or Fraction(0), im or Fraction(0))

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def _coerced(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        d = o.norm2()
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        mag = abs(self.im)
        im_txt = "i" if mag == 1 else f"{mag}i"
        if self.re == 0:
            return im_txt if self.im > 0 else f"-{im_txt}"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{im_txt}"

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"


ZERO = GaussianRational(Fraction(0))
ONE = GaussianRational(Fraction(1))


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of Gaussian rationals, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[tuple[GaussianRational, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "ExactMatrix":
        data = tuple(tuple(GaussianRational.of(v) for v in row) for row in rows)
        if not data or not data[0]:
            raise DimensionMismatchError("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionMismatchError("ragged rows in matrix")
        return ExactMatrix(len(data), width, data)

    @staticmethod
    def from_columns(columns: Iterable[Iterable]) -> "ExactMatrix":
        cols = [list(c) for c in columns]
        return ExactMatrix.from_rows(zip(*cols))

    @staticmethod
    def identity(k: int) -> "ExactMatrix":
        if k < 1:
            raise DimensionMismatchError("identity size must be >= 1")
        return ExactMatrix.from_rows(
            [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        )

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(zip(*self.entries))

    @property
    def is_rational(self) -> bool:
        return all(e.im == 0 for row in self.entries for e in row)

    def __str__(self) -> str:
        return "\n".join("  ".join(str(e) for e in row) for row in self.entries)


def _rational_entry(value) -> Fraction:
    g = GaussianRational.of(value)
    if g.im != 0:
        raise ValueError("entry has a nonzero imaginary part in a rational-only solve")
    return g.re


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; preserves solutions/rank."""
    out = []
    for row in rows:
        scale = math.lcm(*(f.denominator for f in row)) if row else 1
        out.append([int(f * scale) for f in row])
    return out


def solve_exact_linear(a: ExactMatrix, b: Sequence) -> tuple[Fraction, ...]:
    """Solve A x = b exactly over the rationals.

    Raises :class:`SingularMatrixError` whenever det(A) = 0, regardless of the
    right-hand side, and :class:`DimensionMismatchError` on shape violations.
    """
    if a.rows != a.cols:
        raise DimensionMismatchError(f"matrix is {a.rows}x{a.cols}, not square")
    rhs = list(b)
    if len(rhs) != a.rows:
        raise DimensionMismatchError(
            f"right-hand side has length {len(rhs)}, expected {a.rows}"
        )
    k = a.rows
    aug = [
        [_rational_entry(a.entry(i, j)) for j in range(k)] + [_rational_entry(rhs[i])]
        for i in range(k)
    ]
    m = _integer_rows(aug)

    # Fraction-free forward elimination (Bareiss): after step c the rows below
    # hold integer minors of the scaled input; the division by the previous
    # pivot is exact.
    prev = 1
    for c in range(k):
        pivot_row = next((r for r in range(c, k) if m[r][c] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix has determinant zero")
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
        pivot = m[c][c]
        for r in range(c + 1, k):
            factor = m[r][c]
            row_r, row_c = m[r], m[c]
            for j in range(c, k + 1):
                row_r[j] = (pivot * row_r[j] - factor * row_c[j]) // prev
        prev = pivot

    x = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        acc = Fraction(m[i][k])
        for j in range(i + 1, k):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return tuple(x)


def expand_root_product(roots: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of prod(t - r) in descending degree, leading coefficient 1."""
    if not roots:
        raise ValueError("roots must be nonempty")
    coeffs = [1]
    for r in roots:
        nxt = coeffs + [0]
        for i in range(len(coeffs)):
            nxt[i + 1] -= r * coeffs[i]
        coeffs = nxt
    return tuple(coeffs)


# Gaussian integers as (re, im) pairs of Python ints.


def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_divexact(a, b):
    den = b[0] * b[0] + b[1] * b[1]
    re_num = a[0] * b[0] + a[1] * b[1]
    im_num = a[1] * b[0] - a[0] * b[1]
    re, re_rem = divmod(re_num, den)
    im, im_rem = divmod(im_num, den)
    if re_rem or im_rem:
        raise ArithmeticError("inexact Gaussian-integer division in elimination")
    return (re, im)


def matrix_rank_exact(mat: ExactMatrix) -> int:
    """Rank over the Gaussian rationals by fraction-free row echelon."""
    rows = []
    for row in mat.entries:
        scale = math.lcm(*(e.re.denominator for e in row), *(e.im.denominator for e in row))
        rows.append([(int(e.re * scale), int(e.im * scale)) for e in row])

    rank = 0
    prev = (1, 0)
    for c in range(mat.cols):
        pivot_row = next(
            (r for r in range(rank, mat.rows) if rows[r][c] != (0, 0)), None
        )
        if pivot_row is None:
            continue
        if pivot_row != rank:
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][c]
        for r in range(rank + 1, mat.rows):
            factor = rows[r][c]
            row_r, row_p = rows[r], rows[rank]
            for j in range(c, mat.cols):
                lhs = _gi_mul(pivot, row_r[j])
                rhs = _gi_mul(factor, row_p[j])
                row_r[j] = _gi_divexact((lhs[0] - rhs[0], lhs[1] - rhs[1]), prev)
        prev = pivot
        rank += 1
        if rank == mat.rows:
            break
    return rank
