"""Exact ML degrees of rank-2 mixture models, with a numeric cross-check.

The exact side computes, for any positive (m, n), the maximum likelihood
degree of the model of m x n probability tables of rank at most 2, through
an Euler-characteristic induction carried out in arbitrary-precision rational
arithmetic.  Closed forms, a constant-coefficient recurrence, full tables,
and the stratum classifier are exposed alongside.  The numeric side counts
critical points of the likelihood equations directly at desk scale.
"""

from .engine import (
    ClosedForm,
    EulerRecord,
    MLDegreeTable,
    ModelShape,
    RecurrenceCoeffs,
    chi_Y,
    chi_Y_by_recurrence,
    closed_form,
    euler_obstruction,
    euler_record,
    ml_degree,
    ml_table,
    recurrence_coeffs,
)
from .exact import (
    ExactMatrix,
    GaussianRational,
    expand_root_product,
    matrix_rank_exact,
    solve_exact_linear,
)
from .lambdas import LambdaSequence, LambdaTable, compute_lambda, lambda_table
from .oracle import (
    CriticalPointReport,
    DataMatrix,
    ProbabilityPoint,
    VerificationReport,
    available_backends,
    count_critical_points_3x3,
    default_backend,
    rank1_mle,
    rank1_mle_exact,
    verify_critical_point,
)
from .strata import (
    FiberClass,
    WTwoMatrix,
    arrangement_euler_char,
    fiber_euler_char,
    fiber_points,
    validate_w2,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedForm",
    "CriticalPointReport",
    "DataMatrix",
    "EulerRecord",
    "ExactMatrix",
    "FiberClass",
    "GaussianRational",
    "LambdaSequence",
    "LambdaTable",
    "MLDegreeTable",
    "ModelShape",
    "ProbabilityPoint",
    "RecurrenceCoeffs",
    "VerificationReport",
    "WTwoMatrix",
    "arrangement_euler_char",
    "available_backends",
    "chi_Y",
    "chi_Y_by_recurrence",
    "closed_form",
    "compute_lambda",
    "count_critical_points_3x3",
    "default_backend",
    "euler_obstruction",
    "euler_record",
    "expand_root_product",
    "fiber_euler_char",
    "fiber_points",
    "lambda_table",
    "matrix_rank_exact",
    "ml_degree",
    "ml_table",
    "rank1_mle",
    "rank1_mle_exact",
    "recurrence_coeffs",
    "solve_exact_linear",
    "validate_w2",
    "verify_critical_point",
]
