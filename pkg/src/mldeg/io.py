"""Stable JSON schemas for matrices, data grids, and big-integer emission.

Matrix files:   {"rows": R, "cols": C, "entries": [[<literal>, ...], ...]}
                where each literal is an exact scalar like "3", "-5/2",
                "1/2+3/4i", "-i".  parse(print(M)) == M.
Data files:     {"rows": R, "cols": C, "entries": [[<int>, ...], ...]}
                with nonnegative integer counts (strings also accepted).

Integers are emitted as JSON numbers only while they are exactly
representable in a double (|v| < 2^53); anything larger becomes a decimal
string so no consumer can round it.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import MatrixFormatError
from .exact import ExactMatrix, GaussianRational
from .oracle import DataMatrix

_SAFE_INT_BOUND = 2**53


def json_int(value: int) -> int | str:
    return value if -_SAFE_INT_BOUND < value < _SAFE_INT_BOUND else str(value)


def matrix_to_obj(matrix: ExactMatrix) -> dict[str, Any]:
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [[str(e) for e in row] for row in matrix.entries],
    }


def _require_grid(obj: Any, kind: str) -> list[list[Any]]:
    if not isinstance(obj, dict):
        raise MatrixFormatError(f"{kind} file must be a JSON object")
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            raise MatrixFormatError(f"{kind} file is missing {key!r}")
    entries = obj["entries"]
    if (
        not isinstance(entries, list)
        or len(entries) != obj["rows"]
        or any(not isinstance(row, list) or len(row) != obj["cols"] for row in entries)
    ):
        raise MatrixFormatError(f"{kind} entries do not match the declared shape")
    return entries


def matrix_from_obj(obj: Any) -> ExactMatrix:
    entries = _require_grid(obj, "matrix")
    try:
        return ExactMatrix.from_rows(
            [[GaussianRational.from_literal(str(v)) for v in row] for row in entries]
        )
    except MatrixFormatError:
        raise
    except Exception as exc:
        raise MatrixFormatError(f"bad matrix file: {exc}") from exc


def data_from_obj(obj: Any) -> DataMatrix:
    entries = _require_grid(obj, "data")
    try:
        return DataMatrix.from_rows([[int(v) for v in row] for row in entries])
    except (TypeError, ValueError) as exc:
        raise MatrixFormatError(f"bad data file: {exc}") from exc


def load_matrix(path: str) -> ExactMatrix:
    return matrix_from_obj(_load_json(path))


def load_data(path: str) -> DataMatrix:
    return data_from_obj(_load_json(path))


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path} is not valid JSON: {exc}") from exc


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]
