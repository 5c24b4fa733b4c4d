import dataclasses

import pytest
import mpmath as mp

from laguerre_lab.errors import DomainError, ParameterError
from laguerre_lab.ladder import (
    alpha_from_aux,
    auxiliary_identity_residuals,
    compatibility_residuals,
    compute_aux,
    default_z_samples,
    direct_ladder_coeffs,
    eval_ladder_coeffs,
)
from laguerre_lab.orthopoly import build_op_table


@pytest.fixture(scope="module")
def n1_system(n1, rule40):
    table = build_op_table(n1, 10, rule40)
    return table, compute_aux(n1, table, rule40)


@pytest.fixture(scope="module")
def n2_system(n2, rule200):
    table = build_op_table(n2, 6, rule200)
    return table, compute_aux(n2, table, rule200)


class TestComputeAux:
    def test_initial_values(self, n1_system):
        _, aux = n1_system
        # R_(0,1) = (1 / h_0) int x exp(-x) dx = 1/3
        assert mp.almosteq(aux.R[0][0], mp.mpf(1) / 3, 1e-90)
        assert aux.r[0][0] == 0
        assert aux.source == "quadrature"

    def test_zero_lambda(self, classical, rule40):
        table = build_op_table(classical, 5, rule40)
        aux = compute_aux(classical, table, rule40)
        assert all(v == 0 for row in aux.R for v in row)
        assert all(v == 0 for row in aux.r for v in row)

    def test_params_mismatch(self, n1, classical, rule40):
        table = build_op_table(classical, 5, rule40)
        with pytest.raises(ParameterError):
            compute_aux(n1, table, rule40)

    def test_alpha_from_aux(self, n1, n1_system):
        table, aux = n1_system
        for n in range(11):
            assert mp.almosteq(alpha_from_aux(n1, aux.R[n], n), table.alpha_rec[n], 1e-60)


class TestLadderCoefficients:
    def test_partial_fractions_match_integrals(self, n1, n1_system):
        table, aux = n1_system
        A, B = eval_ladder_coeffs(aux, 3, "2.7")
        A_direct, B_direct = direct_ladder_coeffs(n1, table, 3, "2.7", m=40)
        assert mp.almosteq(A, A_direct, 1e-60)
        assert mp.almosteq(B, B_direct, 1e-60)

    def test_b0_vanishes(self, n1_system):
        _, aux = n1_system
        _, B = eval_ladder_coeffs(aux, 0, 5)
        assert abs(B) < mp.mpf("1e-90")

    def test_poles(self, n1_system):
        _, aux = n1_system
        with pytest.raises(DomainError):
            eval_ladder_coeffs(aux, 2, 0)
        with pytest.raises(DomainError):
            eval_ladder_coeffs(aux, 2, -1)
        with pytest.raises(ParameterError):
            eval_ladder_coeffs(aux, 11, 2)

    def test_z_samples(self, n2):
        zs = default_z_samples(n2, 4)
        assert len(zs) == 5
        assert mp.mpf("-0.25") in zs
        assert mp.mpf(4) in zs


class TestCompatibility:
    @pytest.mark.parametrize("n", [1, 3, 8])
    def test_n1(self, n1, n1_system, n):
        table, aux = n1_system
        for z in default_z_samples(n1, n):
            report = compatibility_residuals(table, aux, n, z, tol="1e-30")
            assert report.passed, report.failures()
            assert "S1.2[1]" in report

    def test_n1_reference_point(self, n1_system):
        table, aux = n1_system
        report = compatibility_residuals(table, aux, 3, "2.7")
        assert report.passed
        assert len(report) == 9

    def test_classical(self, classical, rule40):
        table = build_op_table(classical, 5, rule40)
        aux = compute_aux(classical, table, rule40)
        report = compatibility_residuals(table, aux, 3, 2)
        assert report["S1"].absolute < mp.mpf("1e-80")
        assert report.passed

    def test_n2(self, n2, n2_system):
        table, aux = n2_system
        for n in (1, 3):
            for z in default_z_samples(n2, n):
                report = compatibility_residuals(table, aux, n, z, tol="1e-10")
                assert report.passed, report.failures()

    def test_degree_range(self, n1_system):
        table, aux = n1_system
        with pytest.raises(ParameterError):
            compatibility_residuals(table, aux, 0, 2)
        with pytest.raises(ParameterError):
            compatibility_residuals(table, aux, 10, 2)

    def test_perturbed_recurrence_fails(self, n1_system):
        table, aux = n1_system
        beta_rec = list(table.beta_rec)
        beta_rec[4] += mp.mpf("1e-6")
        broken = dataclasses.replace(table, beta_rec=tuple(beta_rec))
        report = compatibility_residuals(broken, aux, 3, "2.7")
        assert not report.passed
        assert not report["S2"].passed


class TestAuxiliaryIdentities:
    def test_n1(self, n1_system):
        table, aux = n1_system
        report = auxiliary_identity_residuals(table, aux)
        assert report.passed, report.failures()
        assert "beta_n[5]" in report
        assert "p[5]" in report

    def test_n2(self, n2_system):
        table, aux = n2_system
        assert auxiliary_identity_residuals(table, aux, tol="1e-10").passed
