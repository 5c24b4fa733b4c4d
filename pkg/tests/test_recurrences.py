import io

import pytest
import mpmath as mp

from laguerre_lab.errors import IterationBreakdownError, ParameterError
from laguerre_lab.ladder import compute_aux
from laguerre_lab.orthopoly import build_op_table, sigma_from_table
from laguerre_lab.recurrences import (
    DE3_LAMBDA1,
    DE3_PRINTED,
    breakdown_threshold,
    compare_aux,
    iterate_difference_system,
    quadrature_initial_data,
    recurrence_from_aux,
    sigma_from_aux,
    sum_rule_residuals,
)


@pytest.fixture(scope="module")
def n1_system(n1, rule40):
    table = build_op_table(n1, 8, rule40)
    return table, compute_aux(n1, table, rule40)


class TestIteration:
    def test_n1_matches_quadrature(self, n1, rule40, n1_system):
        _, reference = n1_system
        iterated = iterate_difference_system(n1, quadrature_initial_data(n1, rule40), 8)
        assert iterated.source == "difference"
        assert compare_aux(iterated, reference).max_diff < mp.mpf("1e-25")

    def test_n2_lambda1_matches_quadrature(self, n2, rule200):
        table = build_op_table(n2, 6, rule200)
        reference = compute_aux(n2, table, rule200)
        iterated = iterate_difference_system(n2, quadrature_initial_data(n2, rule200), 6, DE3_LAMBDA1)
        assert compare_aux(iterated, reference).max_diff < mp.mpf("1e-10")

    def test_n2_printed_variant_departs(self, n2, rule200):
        # lambda_k in place of lambda_1 in the second R update is wrong when lambda_1 != lambda_2
        table = build_op_table(n2, 4, rule200)
        reference = compute_aux(n2, table, rule200)
        iterated = iterate_difference_system(n2, quadrature_initial_data(n2, rule200), 4, DE3_PRINTED)
        assert compare_aux(iterated, reference).max_diff > mp.mpf("1e-6")

    def test_zero_lambda(self, classical, rule40):
        iterated = iterate_difference_system(classical, quadrature_initial_data(classical, rule40), 5)
        assert all(v == 0 for row in iterated.R for v in row)

    def test_invalid(self, n1):
        with pytest.raises(ParameterError):
            iterate_difference_system(n1, ["0.3"], 4, "other")
        with pytest.raises(ParameterError):
            iterate_difference_system(n1, ["0.3", "0.1"], 4)

    def test_breakdown(self, n1):
        # R_(0,1) = 0 makes the beta_n R_(n-1,1) denominator vanish at once
        with pytest.raises(IterationBreakdownError) as e:
            iterate_difference_system(n1, ["0"], 4)
        assert e.value.n == 1

    def test_threshold(self):
        assert mp.almosteq(breakdown_threshold(100), mp.mpf(10) ** -24, 1e-20)

    def test_comparison_csv(self, n1, rule40, n1_system):
        _, reference = n1_system
        comparison = compare_aux(reference, reference)
        assert comparison.max_diff == 0
        buf = io.StringIO()
        comparison.write_csv(buf)
        assert buf.getvalue().startswith("n,k,R_iter")


class TestRecurrenceFromAux:
    def test_classical(self, classical, rule40):
        table = build_op_table(classical, 6, rule40)
        aux = compute_aux(classical, table, rule40)
        for n in range(1, 7):
            rec = recurrence_from_aux(classical, aux, n)
            assert mp.almosteq(rec.alpha, 2 * n + 2, 1e-60)
            assert mp.almosteq(rec.beta, n * (n + 1), 1e-60)
            assert mp.almosteq(rec.p, -n * (n + 1), 1e-60)

    def test_n0(self, n1, n1_system):
        _, aux = n1_system
        rec = recurrence_from_aux(n1, aux, 0)
        assert rec.beta is None
        assert rec.p == 0

    def test_n1(self, n1, n1_system):
        table, aux = n1_system
        for n in range(1, 9):
            rec = recurrence_from_aux(n1, aux, n)
            assert mp.almosteq(rec.beta, table.beta_rec[n], 1e-50)
            assert mp.almosteq(rec.p, table.p1[n], 1e-50)

    def test_sigma(self, n1, n1_system):
        table, aux = n1_system
        for n in range(1, 9):
            assert mp.almosteq(sigma_from_aux(n1, aux, n), sigma_from_table(table, n), 1e-50, 1e-50)
        with pytest.raises(ParameterError):
            sigma_from_aux(n1, aux, 0)

    def test_sum_rules(self, n1_system):
        table, aux = n1_system
        report = sum_rule_residuals(table, aux)
        assert report.passed, report.failures()
        assert "alpha-beta[8]" in report
        assert "sigma[8]" in report
