"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Integer output is always full decimal (never scientific notation); JSON
encodes integers beyond 53-bit safety as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import ModelShape, euler_record, ml_degree, ml_table
from .errors import MldegError
from .io import json_int, load_data, load_matrix
from .lambdas import compute_lambda
from .oracle import (
    DEFAULT_DEDUP_TOL,
    DEFAULT_NEWTON_TOL,
    count_critical_points_3x3,
    rank1_mle,
)
from .strata import fiber_euler_char, validate_w2
from .verify import paper_checks

FORMATS = ("plain", "csv", "json")


def _emit_json(obj) -> None:
    print(json.dumps(obj))


def _cmd_compute(args) -> int:
    shape = ModelShape(args.m, args.n)
    value = ml_degree(shape)
    if args.format == "plain":
        print(value)
    elif args.format == "csv":
        print("m,n,ml_degree")
        print(f"{shape.m},{shape.n},{value}")
    else:
        obj = {"m": shape.m, "n": shape.n, "ml_degree": json_int(value)}
        if shape.m >= 2 and shape.n >= 2:
            record = euler_record(shape)
            obj["chi_Y"] = json_int(record.chi_Y)
            obj["euler_obstruction"] = json_int(record.obstruction)
        _emit_json(obj)
    return 0


def render_table_csv(table) -> str:
    lines = ["," + ",".join(str(n) for n in range(table.n_min, table.n_max + 1))]
    for m in range(table.m_min, table.m_max + 1):
        cells = [str(table.entry(m, n)) for n in range(table.n_min, table.n_max + 1)]
        lines.append(f"{m}," + ",".join(cells))
    return "\n".join(lines)


def _cmd_table(args) -> int:
    table = ml_table(args.max_m, args.max_n)
    if args.format == "csv":
        print(render_table_csv(table))
    elif args.format == "plain":
        widths = [
            max(
                len(str(n)),
                max(len(str(table.entry(m, n))) for m in range(2, table.m_max + 1)),
            )
            for n in range(2, table.n_max + 1)
        ]
        label = max(len(str(m)) for m in range(2, table.m_max + 1))
        header = " " * label + "  " + "  ".join(
            str(n).rjust(w) for n, w in zip(range(2, table.n_max + 1), widths)
        )
        print(header)
        for m in range(2, table.m_max + 1):
            row = "  ".join(
                str(table.entry(m, n)).rjust(w)
                for n, w in zip(range(2, table.n_max + 1), widths)
            )
            print(str(m).rjust(label) + "  " + row)
    else:
        _emit_json(
            {
                "m_min": table.m_min,
                "m_max": table.m_max,
                "n_min": table.n_min,
                "n_max": table.n_max,
                "grid": [[json_int(v) for v in row] for row in table.grid],
            }
        )
    return 0


def _cmd_lambda(args) -> int:
    row = compute_lambda(args.m)
    if args.format == "plain":
        print(" ".join(str(v) for v in row.values))
    elif args.format == "csv":
        print(",".join(str(v) for v in row.values))
    else:
        _emit_json(
            {
                "m": row.m,
                "values": [json_int(v) for v in row.values],
                "ml_degree_diagonal": json_int(row.ml_degree_diagonal),
            }
        )
    return 0


def _cmd_classify_fiber(args) -> int:
    matrix = load_matrix(args.matrix)
    fiber = fiber_euler_char(validate_w2(matrix))
    points = [str(p) for p in sorted(fiber.points, key=lambda g: (g.re, g.im))]
    if args.format == "plain":
        print(f"chi {fiber.chi}")
        print(f"k {fiber.stratum_k}")
        print("points " + " ".join(points))
    elif args.format == "csv":
        print("chi,k,points")
        print(f"{fiber.chi},{fiber.stratum_k},{';'.join(points)}")
    else:
        _emit_json({"chi": fiber.chi, "k": fiber.stratum_k, "points": points})
    return 0


def _cmd_oracle(args) -> int:
    data = load_data(args.data)
    if args.model == "rank1":
        point = rank1_mle(data)
        values = [[float(v.real) for v in row] for row in point.values]
        if args.format == "json":
            _emit_json(
                {
                    "model": "rank1",
                    "values": values,
                    "residual": point.residual,
                    "boundary": point.boundary,
                }
            )
        elif args.format == "csv":
            for row in values:
                print(",".join(repr(v) for v in row))
        else:
            for row in values:
                print(" ".join(repr(v) for v in row))
            print(f"residual {point.residual:.3e}")
            print(f"boundary {str(point.boundary).lower()}")
        return 0

    report = count_critical_points_3x3(
        data,
        starts=args.starts,
        seed=args.seed,
        newton_tol=args.newton_tol,
        dedup_tol=args.dedup_tol,
    )
    if args.format == "json":
        _emit_json(
            {
                "model": "rank2_3x3",
                "count": report.count,
                "starts": report.starts,
                "seed": report.seed,
                "newton_tol": report.newton_tol,
                "dedup_tol": report.dedup_tol,
                "backend": report.backend,
                "rejected": report.rejected,
                "accepted": [
                    {
                        "values": [
                            [[z.real, z.imag] for z in row] for row in point.values
                        ],
                        "residual": point.residual,
                    }
                    for point in report.accepted
                ],
            }
        )
    elif args.format == "csv":
        print("key,value")
        print(f"count,{report.count}")
        for reason, count in report.rejected.items():
            print(f"{reason},{count}")
        print(f"backend,{report.backend}")
    else:
        print(f"count {report.count}")
        for reason, count in report.rejected.items():
            print(f"rejected {reason} {count}")
        print(f"backend {report.backend}")
    return 0


def _cmd_verify(args) -> int:
    if args.suite != "paper":
        print(f"unknown suite: {args.suite}", file=sys.stderr)
        return 2
    results = paper_checks()
    failed = 0
    for result in results:
        mark = "PASS" if result.passed else "FAIL"
        detail = f" ({result.detail})" if result.detail else ""
        print(f"[{mark}] {result.name}{detail}")
        failed += 0 if result.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _add_format(parser: argparse.ArgumentParser, default: str = "plain") -> None:
    parser.add_argument("--format", choices=FORMATS, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mldeg",
        description=(
            "Exact ML degrees of rank-2 mixture models, stratum classification, "
            "and a numeric critical-point oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="ML degree of one (m, n) model")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("table", help="grid of ML degrees for 2 <= m, n <= bounds")
    p.add_argument("--max-m", type=int, required=True, dest="max_m")
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    _add_format(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("lambda", help="stratum characteristic sequence for m")
    p.add_argument("--m", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_lambda)

    p = sub.add_parser(
        "classify-fiber", help="fiber Euler characteristic of an m x 2 matrix"
    )
    p.add_argument("--matrix", required=True, help="path to a matrix JSON file")
    _add_format(p, default="json")
    p.set_defaults(func=_cmd_classify_fiber)

    p = sub.add_parser("oracle", help="numeric critical-point search")
    p.add_argument("--data", required=True, help="path to a data JSON file")
    p.add_argument("--model", choices=("rank2-3x3", "rank1"), default="rank2-3x3")
    p.add_argument("--starts", type=int, default=5000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--newton-tol", type=float, default=DEFAULT_NEWTON_TOL)
    p.add_argument("--dedup-tol", type=float, default=DEFAULT_DEDUP_TOL)
    _add_format(p, default="json")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run the reference verification suite")
    p.add_argument("--suite", required=True)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MldegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
