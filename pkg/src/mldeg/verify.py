"""Self-contained verification suite mirroring the published reference values.

Each check returns a named pass/fail result; the CLI prints one line per
check and exits 1 on any failure.  The frozen tables below are the
authoritative cross-check values for the exact engine; the numeric check
re-counts the 3x3 critical points from scratch.

``fingerprint()`` serializes every deterministic output the suite covers into
one canonical string, used to assert byte-identical behavior across runs and
thread counts.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .engine import (
    ModelShape,
    chi_Y,
    chi_Y_by_recurrence,
    closed_form,
    euler_obstruction,
    ml_degree,
    ml_table,
)
from .exact import ExactMatrix
from .lambdas import LambdaSequence, compute_lambda
from .oracle import (
    DataMatrix,
    count_critical_points_3x3,
    rank1_mle,
    verify_critical_point,
)
from .strata import fiber_euler_char, validate_w2

# Published ML degrees, columns m = 2..7, rows n = m..m+6.
TABLE1 = {
    2: (1, 1, 1, 1, 1, 1, 1),
    3: (10, 26, 58, 122, 250, 506, 1018),
    4: (191, 843, 3119, 10587, 34271, 107883, 333839),
    5: (6776, 40924, 212936, 1015564, 4586456, 19984444, 84986216),
    6: (378477, 2865245, 19177197, 118430045, 692277357, 3892815965, 21284701677),
    7: (
        30305766,
        274740990,
        2244706374,
        17048729886,
        122818757286,
        850742384190,
        5720543812614,
    ),
}

# Published stratum-characteristic sequences for m = 2..7.
TABLE2 = {
    2: (2,),
    3: (-12, 12),
    4: (50, -120, 72),
    5: (-180, 780, -1080, 480),
    6: (602, -4200, 10080, -10080, 3600),
    7: (-1932, 20412, -75600, 127680, -100800, 30240),
}

ML_20_20 = 19674198689452133729973092792823813947695

FIBER_EXAMPLES = (
    (((1, 1), (2, 3), (-2, -3)), 0),
    (((2, 2), (1, -2), (-2, 1)), -1),
    (((4, 5), (-2, 7), (-1, -11)), -2),
)

ORACLE_FIXTURE = ((7, 11, 5), (3, 13, 2), (8, 6, 9))
ORACLE_STARTS = 5000
ORACLE_SEED = 42
ORACLE_TOL = 1e-10

RowSource = Callable[[int], LambdaSequence]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _guarded(name: str, fn: Callable[[], str]) -> CheckResult:
    try:
        detail = fn()
    except Exception as exc:  # a raised invariant is a failed check
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, True, detail)


def _fail_if(name: str, problems: list[str], detail: str = "") -> CheckResult:
    if problems:
        return CheckResult(name, False, "; ".join(problems[:4]))
    return CheckResult(name, True, detail)


def check_table1() -> CheckResult:
    def run() -> str:
        table = ml_table(7, 13)
        problems = [
            f"({m},{m + k}) = {table.entry(m, m + k)} != {expected}"
            for m, row in TABLE1.items()
            for k, expected in enumerate(row)
            if table.entry(m, m + k) != expected
        ]
        if problems:
            raise AssertionError("; ".join(problems[:4]))
        return "42 published entries match"

    return _guarded("table-1-reproduction", run)


def check_table2(rows: RowSource = compute_lambda) -> CheckResult:
    problems = []
    for m, expected in TABLE2.items():
        got = rows(m).values
        if got != expected:
            problems.append(f"m={m}: {got} != {expected}")
    return _fail_if("table-2-reproduction", problems, "rows m = 2..7 match")


def check_power_formula() -> CheckResult:
    problems = [
        f"n={n}"
        for n in range(3, 65)
        if ml_degree(ModelShape(3, n)) != 2 ** (n + 1) - 6
    ]
    return _fail_if("power-formula-3xn", problems, "2^(n+1) - 6 for n = 3..64")


def check_20x20() -> CheckResult:
    def run() -> str:
        value = ml_degree(ModelShape(20, 20))
        if value != ML_20_20:
            raise AssertionError(f"got {value}")
        return "41-digit value matches"

    return _guarded("ml-degree-20x20", run)


def check_3x3_triple() -> CheckResult:
    def run() -> str:
        obstruction = euler_obstruction(ModelShape(3, 3))
        chi = chi_Y(ModelShape(3, 3))
        degree = ml_degree(ModelShape(3, 3))
        if (obstruction, chi, degree) != (-2, -12, 10):
            raise AssertionError(f"got ({obstruction}, {chi}, {degree})")
        if chi != -degree + obstruction:
            raise AssertionError("chi = -ml + obstruction violated")
        return "obstruction -2, chi -12, ML degree 10"

    return _guarded("three-by-three-triple", run)


def check_cross_method() -> CheckResult:
    def run() -> str:
        problems = []
        for m in range(3, 8):
            form = closed_form(m)
            chis = chi_Y_by_recurrence(m, m + 20)
            for n in range(m, m + 21):
                direct = ml_degree(ModelShape(m, n))
                via_form = form.evaluate(n)
                via_rec = euler_obstruction(ModelShape(m, n)) - chis[n - 2]
                if not direct == via_form == via_rec:
                    problems.append(f"({m},{n})")
        if problems:
            raise AssertionError(", ".join(problems[:6]))
        return "closed form == recurrence == direct for m = 3..7, n = m..m+20"

    return _guarded("cross-method-equivalence", run)


def check_symmetry() -> CheckResult:
    problems = [
        f"({m},{n})"
        for m in range(2, 11)
        for n in range(2, 11)
        if ml_degree(ModelShape(m, n)) != ml_degree(ModelShape(n, m))
    ]
    return _fail_if("symmetry", problems, "ml(m,n) = ml(n,m) for 2 <= m,n <= 10")


def check_lambda_invariants(rows: RowSource = compute_lambda) -> CheckResult:
    from math import factorial

    problems = []
    for m in range(2, 13):
        row = rows(m)
        if row.values[-1] != (m - 1) * factorial(m):
            problems.append(f"m={m}: last != (m-1)m!")
        if sum(row.values) != 1 + (-1) ** m:
            problems.append(f"m={m}: sum != 1+(-1)^m")
        if row.coefficient_sum() != (-1) ** m * (m - 1):
            problems.append(f"m={m}: weighted sum != (-1)^m(m-1)")
    return _fail_if("lambda-invariants", problems, "three identities for m = 2..12")


def check_fiber_examples() -> CheckResult:
    def run() -> str:
        for rows, expected_chi in FIBER_EXAMPLES:
            fc = fiber_euler_char(validate_w2(ExactMatrix.from_rows(rows)))
            if fc.chi != expected_chi:
                raise AssertionError(f"{rows}: chi {fc.chi} != {expected_chi}")
        return "example fibers classify to chi = 0, -1, -2"

    return _guarded("fiber-strata-examples", run)


def check_rank1_oracle() -> CheckResult:
    def run() -> str:
        data = DataMatrix.from_rows([[2, 8], [5, 10]])
        point = rank1_mle(data)
        expected = [[70 / 625, 180 / 625], [105 / 625, 270 / 625]]
        for i in range(2):
            for j in range(2):
                if abs(point.values[i][j] - expected[i][j]) > 1e-15:
                    raise AssertionError("closed-form point mismatch")
        report = verify_critical_point(point, data, "rank1", 1e-12)
        if not report.passed:
            raise AssertionError(f"residual {report.residual} >= 1e-12")
        return f"residual {report.residual:.2e} < 1e-12"

    return _guarded("rank1-closed-form", run)


def check_numeric_count() -> CheckResult:
    def run() -> str:
        data = DataMatrix.from_rows(ORACLE_FIXTURE)
        report = count_critical_points_3x3(
            data, starts=ORACLE_STARTS, seed=ORACLE_SEED, newton_tol=ORACLE_TOL
        )
        if report.count != 10:
            raise AssertionError(f"count {report.count} != 10")
        worst = max(
            verify_critical_point(p, data, "rank2_3x3", ORACLE_TOL).residual
            for p in report.accepted
        )
        if worst >= ORACLE_TOL:
            raise AssertionError(f"re-verified residual {worst} >= {ORACLE_TOL}")
        return f"10 points, worst residual {worst:.2e} ({report.backend} backend)"

    return _guarded("numeric-count-3x3", run)


def paper_checks(
    rows: RowSource = compute_lambda, include_numeric: bool = True
) -> list[CheckResult]:
    results = [
        check_table1(),
        check_table2(rows),
        check_power_formula(),
        check_20x20(),
        check_3x3_triple(),
        check_cross_method(),
        check_symmetry(),
        check_lambda_invariants(rows),
        check_fiber_examples(),
        check_rank1_oracle(),
    ]
    if include_numeric:
        results.append(check_numeric_count())
    return results


def fingerprint() -> str:
    """Canonical serialization of every deterministic output; byte-identical
    across runs and MLDEG_THREADS settings by construction, asserted in tests."""
    lines: list[str] = []
    table = ml_table(7, 13)
    for m in range(2, 8):
        lines.append(
            f"table m={m}: " + " ".join(str(table.entry(m, n)) for n in range(2, 14))
        )
    for m in range(2, 13):
        row = compute_lambda(m)
        lines.append(f"lambda m={m}: " + " ".join(map(str, row.values)))
        lines.append(f"diag m={m}: {row.ml_degree_diagonal}")
    lines.append(
        "powers: " + " ".join(str(ml_degree(ModelShape(3, n))) for n in range(3, 65))
    )
    lines.append(f"large: {ml_degree(ModelShape(20, 20))}")
    lines.append(
        f"triple: {euler_obstruction(ModelShape(3, 3))} "
        f"{chi_Y(ModelShape(3, 3))} {ml_degree(ModelShape(3, 3))}"
    )
    for m in range(3, 8):
        form = closed_form(m)
        chis = chi_Y_by_recurrence(m, m + 20)
        lines.append(
            f"cross m={m}: "
            + " ".join(str(form.evaluate(n)) for n in range(m, m + 21))
            + " | "
            + " ".join(map(str, chis))
        )
    lines.append(
        "symmetry: "
        + " ".join(
            str(ml_degree(ModelShape(m, n)))
            for m in range(2, 11)
            for n in range(2, 11)
        )
    )
    for rows, _ in FIBER_EXAMPLES:
        fc = fiber_euler_char(validate_w2(ExactMatrix.from_rows(rows)))
        points = sorted(str(p) for p in fc.points)
        lines.append(f"fiber: chi={fc.chi} k={fc.stratum_k} points={','.join(points)}")
    return "\n".join(lines) + "\n"
