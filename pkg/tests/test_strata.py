import random
from fractions import Fraction

import pytest

from mldeg.errors import (
    ColumnsEqualError,
    ColumnSumNotOneError,
    DimensionMismatchError,
    InvalidShapeError,
    UnsupportedArrangementError,
    ZeroEntryError,
)
from mldeg.exact import ExactMatrix, GaussianRational
from mldeg.strata import (
    arrangement_euler_char,
    fiber_euler_char,
    fiber_points,
    validate_w2,
)

X0 = ExactMatrix.from_columns([[1, 2, -2], [1, 3, -3]])
X1 = ExactMatrix.from_columns([[2, 1, -2], [2, -2, 1]])
X2 = ExactMatrix.from_columns([[4, -2, -1], [5, 7, -11]])


def literal_set(points):
    return {str(p) for p in points}


class TestValidation:
    def test_example_accepted(self):
        w = validate_w2(X0)
        assert w.m == 3
        assert w.col1[0] == GaussianRational.of(1)

    def test_columns_equal(self):
        m = ExactMatrix.from_columns([["1/2", "1/2"], ["1/2", "1/2"]])
        with pytest.raises(ColumnsEqualError):
            validate_w2(m)

    def test_zero_entry(self):
        m = ExactMatrix.from_columns([[1, 0, 0], ["1/2", "1/4", "1/4"]])
        with pytest.raises(ZeroEntryError) as info:
            validate_w2(m)
        assert (info.value.row, info.value.col) == (1, 0)

    def test_column_sum(self):
        m = ExactMatrix.from_columns([[1, 1], ["1/2", "1/2"]])
        with pytest.raises(ColumnSumNotOneError) as info:
            validate_w2(m)
        assert info.value.col == 0
        assert info.value.actual == "2"

    def test_shape(self):
        with pytest.raises(DimensionMismatchError):
            validate_w2(ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))
        with pytest.raises(DimensionMismatchError):
            validate_w2(ExactMatrix.from_rows([[1, 1]]))


class TestFiberPoints:
    def test_single_exclusion(self):
        assert literal_set(fiber_points(validate_w2(X0))) == {"3"}

    def test_three_exclusions(self):
        # cardinality 3 is the published fact; members re-derived from the
        # exclusion formula -b2/(b1 - b2) row by row
        points = fiber_points(validate_w2(X2))
        assert len(points) == 3
        assert literal_set(points) == {"5", "7/9", "11/10"}

    def test_two_exclusions_published_cardinality(self):
        points = fiber_points(validate_w2(X1))
        assert len(points) == 2
        assert literal_set(points) == {"2/3", "1/3"}

    def test_two_row_case(self):
        # direct substitution: rows give 1/3 and 2/3
        m = ExactMatrix.from_columns([[2, -1], [-1, 2]])
        assert literal_set(fiber_points(validate_w2(m))) == {"1/3", "2/3"}


class TestFiberClass:
    @pytest.mark.parametrize(
        "matrix,chi,k", [(X0, 0, 0), (X1, -1, 1), (X2, -2, 2)]
    )
    def test_examples(self, matrix, chi, k):
        fc = fiber_euler_char(validate_w2(matrix))
        assert (fc.chi, fc.stratum_k) == (chi, k)
        assert fc.chi == 1 - len(fc.points)

    def test_bounds_on_random_points(self):
        rng = random.Random(41)
        for _ in range(60):
            m = rng.randint(2, 6)
            w = validate_w2(random_w2(rng, m))
            fc = fiber_euler_char(w)
            assert 1 <= len(fc.points) <= m
            assert 0 >= fc.chi >= -(m - 1)
            assert fc.stratum_k == len(fc.points) - 1

    def test_row_permutation_invariance(self):
        rng = random.Random(5)
        for _ in range(20):
            m = rng.randint(2, 5)
            mat = random_w2(rng, m)
            perm = list(range(m))
            rng.shuffle(perm)
            permuted = ExactMatrix.from_rows([mat.entries[i] for i in perm])
            a = fiber_euler_char(validate_w2(mat))
            b = fiber_euler_char(validate_w2(permuted))
            assert (a.chi, a.stratum_k, a.points) == (b.chi, b.stratum_k, b.points)

    def test_scaling_differing_rows_preserves_stratum(self):
        # scaling every row where the columns differ by the same nonzero t
        # leaves each excluded value unchanged, hence the stratum, whenever
        # the scaled matrix is still a member
        rng = random.Random(12)
        tested = 0
        while tested < 20:
            m = rng.randint(2, 5)
            mat = random_w2(rng, m)
            t = rng.choice(
                [GaussianRational.of(2), GaussianRational.of(3), GaussianRational.of(-1)]
            )
            scaled_rows = [
                [t * a, t * b] if a != b else [a, b]
                for a, b in mat.entries
            ]
            try:
                scaled = validate_w2(ExactMatrix.from_rows(scaled_rows))
            except Exception:
                continue
            base = fiber_euler_char(validate_w2(mat))
            assert fiber_euler_char(scaled).stratum_k == base.stratum_k
            tested += 1

    def test_generic_points_land_in_top_stratum(self):
        # no assertion on a single draw; generic entries should overwhelmingly
        # give the maximal number of distinct exclusions
        rng = random.Random(2718)
        m = 4
        hits = sum(
            1
            for _ in range(60)
            if fiber_euler_char(validate_w2(random_w2(rng, m))).stratum_k == m - 1
        )
        assert hits >= 40


def random_w2(rng: random.Random, m: int) -> ExactMatrix:
    """Random member: nonzero rational entries, unit column sums, distinct cols."""
    while True:
        cols = []
        for _ in range(2):
            head = [
                Fraction(rng.choice([x for x in range(-6, 7) if x]), rng.randint(1, 4))
                for _ in range(m - 1)
            ]
            tail = 1 - sum(head)
            if tail == 0:
                break
            cols.append(head + [tail])
        if len(cols) != 2 or cols[0] == cols[1]:
            continue
        return ExactMatrix.from_columns(cols)


class TestArrangement:
    @pytest.mark.parametrize(
        "s,r,expected",
        [
            (1, 2, -1),  # the line minus two points
            (1, 3, -2),  # the line minus three points
            (4, 5, 1),   # matches the sign pattern (-1)^(n-1) at n = 5
            (2, 4, 3),
            (3, 4, -1),
        ],
    )
    def test_values(self, s, r, expected):
        assert arrangement_euler_char(s, r) == expected

    def test_uncovered_count(self):
        with pytest.raises(UnsupportedArrangementError):
            arrangement_euler_char(2, 5)
        with pytest.raises(UnsupportedArrangementError):
            arrangement_euler_char(3, 3)

    def test_bad_dimension(self):
        with pytest.raises(InvalidShapeError):
            arrangement_euler_char(0, 1)
