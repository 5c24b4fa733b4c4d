import pytest
import mpmath as mp

from laguerre_lab.coulomb import (
    SupportInterval,
    check_density,
    density,
    density_from_integral,
    density_limit_profile,
    endpoint_residuals,
    integral_identity_residuals,
    lagrange_multiplier,
    log_potential,
    solve_endpoints,
)
from laguerre_lab.errors import DomainError, ParameterError
from laguerre_lab.weights import WeightParams

BITS = 200


@pytest.fixture(scope="module")
def deformed():
    return solve_endpoints(WeightParams("1", [("1", "2")], BITS), 10)


class TestEndpoints:
    def test_closed_form(self):
        support = solve_endpoints(WeightParams("2", [("1", "0")], BITS), 5)
        with mp.workprec(BITS):
            assert mp.almosteq(support.a, 12 - mp.sqrt(140), 1e-50)
            assert mp.almosteq(support.b, 12 + mp.sqrt(140), 1e-50)
        assert support.alternate_solutions == []

    def test_small_lambda(self):
        support = solve_endpoints(WeightParams("2", [("1", "1e-30")], BITS), 5)
        with mp.workprec(BITS):
            assert abs(support.a - (12 - mp.sqrt(140))) < mp.mpf("1e-25")
            assert abs(support.b - (12 + mp.sqrt(140))) < mp.mpf("1e-25")

    def test_deformed(self, deformed):
        f1, f2 = endpoint_residuals(deformed.params, 10, deformed.a, deformed.b)
        assert abs(f1) < mp.mpf("1e-30")
        assert abs(f2) < mp.mpf("1e-30")
        assert 0 < deformed.a < deformed.b

    def test_negative_lambda(self):
        with pytest.raises(ParameterError):
            solve_endpoints(WeightParams("1", [("1", "-0.5")], BITS), 4)
        with pytest.raises(ParameterError):
            solve_endpoints(WeightParams("1", [("1", "1")], BITS), 0)

    def test_support_order(self, deformed):
        with pytest.raises(DomainError):
            SupportInterval(deformed.b, deformed.a, 10, deformed.params)

    def test_as_dict(self, deformed):
        d = deformed.as_dict()
        assert d["n"] == 10
        assert d["alternate_solutions"] == []


class TestDensity:
    def test_matches_principal_value(self, deformed):
        for frac in ("0.1", "0.5", "0.9"):
            x = deformed.a + (deformed.b - deformed.a) * mp.mpf(frac)
            assert mp.almosteq(density(deformed, x), density_from_integral(deformed, x), 1e-20)

    def test_endpoints_vanish(self, deformed):
        assert density(deformed, deformed.a) == 0
        assert density(deformed, deformed.b) == 0

    def test_outside(self, deformed):
        with pytest.raises(DomainError):
            density(deformed, deformed.b + 1)
        with pytest.raises(DomainError):
            density_from_integral(deformed, deformed.a)
        with pytest.raises(DomainError):
            log_potential(deformed, deformed.b + 1)

    def test_check(self, deformed):
        report = check_density(deformed)
        assert report.passed, report.failures()
        assert "constancy[4]" in report
        assert "A" in report.info

    def test_perturbed_support_fails(self, deformed):
        broken = SupportInterval(deformed.a, deformed.b + mp.mpf("0.1"), 10, deformed.params)
        report = check_density(broken)
        assert not report["normalization"].passed
        assert not report.passed

    def test_limit_profile(self):
        n = 10**4
        support = solve_endpoints(WeightParams("1", [("1", "0")], BITS), n, multistart=False)
        assert abs(density(support, 4 * n * mp.mpf("0.5")) - density_limit_profile("0.5")) < mp.mpf("1e-3")
        with pytest.raises(DomainError):
            density_limit_profile(0)


class TestLagrangeMultiplier:
    def test_hard_edge(self):
        # alpha -> 0 leaves A = 2n - 2n ln n
        support = solve_endpoints(WeightParams("1e-10", [("1", "0")], BITS), 3, multistart=False)
        with mp.workprec(BITS):
            assert abs(lagrange_multiplier(support) - (6 - 6 * mp.log(3))) < mp.mpf("1e-8")


class TestIntegralIdentities:
    def test_identities(self):
        report = integral_identity_residuals(1, 3, "0.5", precision_bits=BITS)
        assert report.passed, report.failures()
        assert len(report) == 8
        assert report["arcsine-log"].absolute < mp.mpf("1e-20")

    def test_log_singularities_at_full_precision(self):
        report = integral_identity_residuals(1, 3, "0.5", precision_bits=333, tol="1e-40")
        for name in ("log", "log-shift", "arcsine-log"):
            assert mp.isfinite(report[name].absolute)
            assert report[name].passed

    def test_invalid(self):
        with pytest.raises(ParameterError):
            integral_identity_residuals(3, 1, 1)
        with pytest.raises(ParameterError):
            integral_identity_residuals(1, 3, 1, y=5)
