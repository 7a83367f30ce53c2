from fractions import Fraction

import pytest

from mldeg.engine import (
    ModelShape,
    chi_Y,
    chi_Y_by_recurrence,
    closed_form,
    euler_obstruction,
    euler_record,
    ml_degree,
    ml_table,
    recurrence_coeffs,
)
from mldeg.errors import InvalidShapeError
from mldeg.exact import expand_root_product
from mldeg.lambdas import compute_lambda

# Published grid, columns m = 2..7, rows n = m..m+6.
PUBLISHED = {
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


class TestObstruction:
    @pytest.mark.parametrize(
        "shape,expected",
        [((3, 3), -2), ((2, 3), 1), ((5, 4), 3), ((2, 2), -1), ((4, 4), -3)],
    )
    def test_values(self, shape, expected):
        # direct evaluation of (-1)^(m+n-1) (min - 1)
        assert euler_obstruction(shape) == expected

    @pytest.mark.parametrize("shape", [(1, 3), (3, 1), (1, 1)])
    def test_needs_two_states(self, shape):
        with pytest.raises(InvalidShapeError):
            euler_obstruction(shape)


class TestChi:
    @pytest.mark.parametrize(
        "shape,expected", [((3, 3), -12), ((3, 2), 0), ((2, 2), -2), ((2, 3), 0)]
    )
    def test_values(self, shape, expected):
        assert chi_Y(shape) == expected

    def test_row_mismatch_rejected(self):
        with pytest.raises(InvalidShapeError):
            chi_Y((4, 5), compute_lambda(3))

    def test_consistency_with_obstruction(self):
        for m in range(2, 9):
            for n in range(2, 9):
                assert chi_Y((m, n)) == -ml_degree((m, n)) + euler_obstruction((m, n))

    def test_corrupted_row_raises(self):
        # Integer-valued corruption can never break integrality here, because
        # i^(n-1) = (-1)^(n-1) mod (i+1) makes each term clear its own
        # denominator; the guard exists for non-integer corruption leaking in.
        from mldeg.lambdas import LambdaSequence

        bad = LambdaSequence(3, (Fraction(-23, 2), 12), 10)
        with pytest.raises(ArithmeticError):
            chi_Y((3, 4), bad)


class TestMlDegree:
    @pytest.mark.parametrize(
        "shape,expected",
        [
            ((3, 3), 10),
            ((4, 6), 3119),
            ((2, 7), 1),
            ((7, 2), 1),
            ((1, 5), 1),
            ((5, 1), 1),
            ((1, 1), 1),
        ],
    )
    def test_values(self, shape, expected):
        assert ml_degree(shape) == expected

    def test_large_square(self):
        assert ml_degree((20, 20)) == 19674198689452133729973092792823813947695

    def test_power_formula(self):
        for n in range(3, 65):
            assert ml_degree((3, n)) == 2 ** (n + 1) - 6

    def test_symmetry(self):
        for m in range(2, 11):
            for n in range(2, 11):
                assert ml_degree((m, n)) == ml_degree((n, m))

    def test_positive_on_grid(self):
        assert all(
            ml_degree((m, n)) >= 1 for m in range(1, 9) for n in range(1, 9)
        )

    def test_diagonal_matches_generic_route(self):
        # the stored square-model byproduct equals obstruction - chi
        for m in range(3, 9):
            row = compute_lambda(m)
            assert row.ml_degree_diagonal == euler_obstruction((m, m)) - chi_Y((m, m))

    @pytest.mark.parametrize("shape", [(0, 3), (3, 0), (-1, 2)])
    def test_invalid(self, shape):
        with pytest.raises(InvalidShapeError):
            ml_degree(shape)


class TestRecurrence:
    @pytest.mark.parametrize(
        "m,expected",
        [(2, (0, 1)), (3, (2, 1, -2)), (4, (5, -5, -5, 6))],
    )
    def test_coefficients(self, m, expected):
        # expansions of (t+1) prod (t-r) done by hand
        assert recurrence_coeffs(m).c == expected

    @pytest.mark.parametrize("m", range(2, 11))
    def test_characteristic_polynomial_identity(self, m):
        coeffs = recurrence_coeffs(m)
        product = expand_root_product((-1,) + tuple(range(1, m)))
        assert (1,) + tuple(-c for c in coeffs.c) == product

    def test_seeded_values_m3(self):
        # seeds for n = 2..4 then one hand recurrence step:
        # 2*(-24) + 1*(-12) - 2*0 = -60
        assert chi_Y_by_recurrence(3, 5) == (0, -12, -24, -60)

    def test_alternating_pattern_m2(self):
        values = chi_Y_by_recurrence(2, 9)
        assert values == tuple((-1) ** (n - 1) - 1 for n in range(2, 10))

    def test_matches_direct_formula(self):
        values = chi_Y_by_recurrence(4, 10)
        assert values[10 - 2] == chi_Y((4, 10))

    def test_short_window(self):
        assert chi_Y_by_recurrence(5, 3) == (chi_Y((5, 2)), chi_Y((5, 3)))

    @pytest.mark.parametrize("m", range(2, 8))
    def test_annihilation_over_window(self, m):
        # the chi sequence is annihilated by its characteristic polynomial
        coeffs = recurrence_coeffs(m).c
        values = {n: chi_Y((m, n)) for n in range(2, m + 23)}
        for n in range(m + 2, m + 23):
            assert values[n] == sum(
                c * values[n - k] for k, c in enumerate(coeffs, start=1)
            )

    def test_invalid(self):
        with pytest.raises(InvalidShapeError):
            recurrence_coeffs(1)
        with pytest.raises(InvalidShapeError):
            chi_Y_by_recurrence(3, 1)


class TestClosedForm:
    def test_m3(self):
        form = closed_form(3)
        assert form.coeffs == (Fraction(-6), Fraction(4))
        for n in range(3, 20):
            assert form.evaluate(n) == 2 ** (n + 1) - 6

    def test_m4(self):
        assert closed_form(4).coeffs == (Fraction(25), Fraction(-40), Fraction(18))

    def test_m5_square_value(self):
        assert closed_form(5).evaluate(5) == 6776

    def test_agrees_with_direct(self):
        for m in range(3, 8):
            form = closed_form(m)
            for n in range(m, m + 11):
                assert form.evaluate(n) == ml_degree((m, n))

    def test_below_range(self):
        with pytest.raises(InvalidShapeError):
            closed_form(2)
        with pytest.raises(InvalidShapeError):
            closed_form(3).evaluate(2)


class TestTable:
    def test_published_entries(self):
        table = ml_table(7, 13)
        for m, row in PUBLISHED.items():
            for k, expected in enumerate(row):
                assert table.entry(m, m + k) == expected

    def test_row_of_ones(self):
        table = ml_table(2, 5)
        assert table.grid == ((1, 1, 1, 1),)

    def test_row_three_tail(self):
        assert ml_table(3, 9).entry(3, 9) == 1018

    def test_symmetric_in_range(self):
        table = ml_table(6, 6)
        for m in range(2, 7):
            for n in range(2, 7):
                assert table.entry(m, n) == table.entry(n, m)

    def test_out_of_range_entry(self):
        with pytest.raises(InvalidShapeError):
            ml_table(3, 3).entry(4, 3)

    def test_invalid_bounds(self):
        with pytest.raises(InvalidShapeError):
            ml_table(1, 5)


class TestRecordAndShape:
    def test_record_keeps_orientation(self):
        record = euler_record((5, 3))
        assert (record.shape.m, record.shape.n) == (5, 3)
        assert record.chi_Y == -record.ml_degree + record.obstruction
        assert record.ml_degree == 58

    def test_shape_validation(self):
        with pytest.raises(InvalidShapeError):
            ModelShape(0, 2)
        with pytest.raises(InvalidShapeError):
            ml_degree("nonsense")
