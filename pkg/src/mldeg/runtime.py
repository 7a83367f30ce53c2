"""Thread-pool plumbing controlled by the MLDEG_THREADS environment variable.

MLDEG_THREADS = 0 or unset means "auto" (one worker per CPU).  Work items are
always dispatched and collected in input order, so results are independent of
the worker count.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_VAR = "MLDEG_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR, "").strip()
    if raw == "":
        value = 0
    else:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
        if value < 0:
            raise ValueError(f"{ENV_VAR} must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def parallel_map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Map ``fn`` over ``items`` preserving order; threaded when allowed."""
    workers = min(thread_count(), len(items)) or 1
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
