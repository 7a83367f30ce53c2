#!/usr/bin/env python3
"""Benchmark the two Newton kernels on the pinned 3x3 fixture.

Runs the same multi-start search on every available backend and reports
wall time, accepted counts, and the speedup of the compiled kernel over the
pure-Python one.  Counts must agree across backends; a mismatch aborts.

    python3 benchmarks/bench_oracle.py --starts 5000 --repeats 3
"""

from __future__ import annotations

import argparse
import statistics
import time

from mldeg.oracle import (
    DataMatrix,
    available_backends,
    count_critical_points_3x3,
)

FIXTURE = [[7, 11, 5], [3, 13, 2], [8, 6, 9]]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--starts", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    data = DataMatrix.from_rows(FIXTURE)
    timings: dict[str, float] = {}
    counts: dict[str, int] = {}
    for backend in available_backends():
        samples = []
        for _ in range(args.repeats):
            begin = time.perf_counter()
            report = count_critical_points_3x3(
                data, starts=args.starts, seed=args.seed, backend=backend
            )
            samples.append(time.perf_counter() - begin)
        timings[backend] = statistics.median(samples)
        counts[backend] = report.count
        rate = args.starts / timings[backend]
        print(
            f"{backend:>8}: count {report.count:>2}  "
            f"median {timings[backend]:.3f}s over {args.repeats} runs  "
            f"({rate:,.0f} starts/s)"
        )

    if len(set(counts.values())) > 1:
        print(f"count mismatch across backends: {counts}")
        return 1
    if "compiled" in timings and "python" in timings:
        print(f"speedup: {timings['python'] / timings['compiled']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
