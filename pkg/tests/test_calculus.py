import pytest
import mpmath as mp

from laguerre_lab.calculus import (
    FDConfig,
    TPointEvaluator,
    delta,
    delta2,
    differential_relation_residuals,
    lattice_points,
    lattice_residuals,
    partial,
    pde_residual_R,
    riccati_residuals,
    second_partial,
    sigma_jet,
    sigma_pde_residual,
    stencil_weights,
    toda_residuals,
)
from laguerre_lab.errors import DomainError, ParameterError
from laguerre_lab.orthopoly import sigma_from_table


def cubic(t):
    return t[0] ** 2 * t[1]


class TestStencils:
    def test_partial(self):
        assert mp.almosteq(partial(cubic, (1, 2), 0), 4, 1e-20)
        assert mp.almosteq(partial(cubic, (1, 2), 1), 1, 1e-20)

    def test_second_partial(self):
        assert mp.almosteq(second_partial(cubic, (1, 2), 0, 1), 2, 1e-60)
        assert mp.almosteq(second_partial(cubic, (1, 2), 0, 0), 4, 1e-60)

    def test_order2_richardson(self):
        cfg = FDConfig(step="1e-4", order=2, richardson=True)
        f = lambda t: mp.exp(t[0])
        assert mp.almosteq(partial(f, (1,), 0, cfg), mp.e, 1e-12)

    def test_euler_operator(self):
        # cubic is homogeneous of degree 3
        t = (mp.mpf("1.5"), mp.mpf("0.5"))
        assert mp.almosteq(delta(cubic, t), 3 * cubic(t), 1e-20)
        assert mp.almosteq(delta2(cubic, t), 9 * cubic(t), 1e-60)

    def test_leaves_domain(self):
        with pytest.raises(DomainError):
            partial(cubic, (1, 2), 0, FDConfig(step=6))
        with pytest.raises(ParameterError):
            partial(cubic, (1, 2), 2)

    def test_shrunk_step(self, caplog):
        assert mp.almosteq(partial(cubic, (1, 2), 0, FDConfig(step="0.6")), 4, 1e-20)
        assert "shrunk" in caplog.text


def smooth(t):
    return mp.exp(t[0]) * mp.log(t[1])


class TestStencilWeights:
    @pytest.mark.parametrize("order", [2, 4])
    def test_moments(self, order):
        eps = mp.mpf(2) ** -320
        first = stencil_weights(order, 1)
        assert abs(mp.fsum(first.values())) < eps
        assert abs(mp.fsum(a * w for a, w in first.items()) - 1) < eps
        second = stencil_weights(order, 2)
        assert abs(mp.fsum(second.values())) < eps
        assert abs(mp.fsum(a * w for a, w in second.items())) < eps
        assert abs(mp.fsum(a * a * w for a, w in second.items()) / 2 - 1) < eps

    def test_follows_working_precision(self):
        with mp.workprec(400):
            w = stencil_weights(4, 2)
            assert abs(w[-2] + mp.mpf(1) / 12) < mp.mpf(2) ** -395

    def test_unknown(self):
        with pytest.raises(ParameterError):
            stencil_weights(6, 1)
        with pytest.raises(ParameterError):
            stencil_weights(4, 3)


class TestNonPolynomial:
    t = ("1", "2")

    def test_default_step(self):
        e = mp.e
        assert mp.almosteq(partial(smooth, self.t, 0), e * mp.log(2), 1e-30)
        assert mp.almosteq(second_partial(smooth, self.t, 0, 0), e * mp.log(2), 1e-30)
        assert mp.almosteq(second_partial(smooth, self.t, 1, 1), -e / 4, 1e-30)
        assert mp.almosteq(second_partial(smooth, self.t, 0, 1), e / 2, 1e-30)

    def test_richardson(self):
        cfg = FDConfig(richardson=True)
        e = mp.e
        assert mp.almosteq(second_partial(smooth, self.t, 0, 0, cfg), e * mp.log(2), 1e-40)
        assert mp.almosteq(second_partial(smooth, self.t, 0, 1, cfg), e / 2, 1e-40)
        # delta^2 (e^t0 ln t1) = (t0 + t0^2) e^t0 ln t1 + 2 t0 e^t0
        assert mp.almosteq(delta2(smooth, self.t, cfg), 2 * e * mp.log(2) + 2 * e, 1e-40)


class TestFDConfig:
    def test_invalid(self):
        with pytest.raises(ParameterError):
            FDConfig(order=3)
        with pytest.raises(ParameterError):
            FDConfig(step=0)

    def test_validate(self):
        FDConfig().validate(333)
        with pytest.raises(ParameterError):
            FDConfig(step="1e-50").validate(333)
        with pytest.raises(ParameterError):
            FDConfig(step="0.1").validate(333)


class TestEvaluator:
    def test_cache(self, n1, rule40):
        ev = TPointEvaluator(n1, 4, rule40)
        a = ev.snapshot((1,))
        assert ev.snapshot((mp.mpf(1),)) is a
        assert a.params is n1
        ev.snapshot((2,))
        assert len(ev) == 2

    def test_sigma_jet(self, n1, rule40):
        ev = TPointEvaluator(n1, 3, rule40)
        jet = sigma_jet(ev, 3, n1.shifts)
        assert mp.almosteq(jet.value, sigma_from_table(ev.snapshot(n1.shifts).table, 3), 1e-60)
        # r_(n,k) = -d sigma_n / dt_k
        assert mp.almosteq(-jet.grad[0], ev.snapshot(n1.shifts).aux.r[3][0], 1e-20)
        assert mp.almosteq(jet.delta, jet.grad[0], 1e-60)


class TestDifferentialRelations:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_n1(self, n1, rule40, n):
        report = differential_relation_residuals(n1, n, rule=rule40)
        assert report.passed, report.failures()
        assert {"dr1[1]", "dr2[1]", "dr3[1]", "dr4[1]", "lnD[1]"} <= set(report.entries)

    def test_n2(self, n2, rule200):
        report = differential_relation_residuals(n2, 2, tol="1e-9", rule=rule200)
        assert report.passed, report.failures()
        assert "dr4[2]" in report

    def test_degree(self, n1, rule40):
        with pytest.raises(ParameterError):
            differential_relation_residuals(n1, 0, rule=rule40)


class TestToda:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_n1(self, n1, rule40, n):
        assert toda_residuals(n1, n, rule=rule40).passed

    def test_n2(self, n2, rule200):
        assert toda_residuals(n2, 3, tol="1e-9", rule=rule200).passed


class TestRiccati:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_n1(self, n1, rule40, n):
        report = riccati_residuals(n1, n, rule=rule40)
        assert report.passed, report.failures()
        assert {"re1[1]", "re2[1]", "re5[1]", "qae[1]"} <= set(report.entries)

    def test_n2_mixed(self, n2, rule200):
        report = riccati_residuals(n2, 2, tol="1e-9", rule=rule200)
        assert report.passed, report.failures()
        assert "re3[1,2]" in report
        assert "re4[1,2]" in report


class TestPDE:
    def test_n1(self, n1, rule40):
        report = pde_residual_R(n1, 3, rule=rule40)
        assert report.passed, report.failures()
        assert "pv-y" in report

    def test_n2(self, n2, rule200):
        report = pde_residual_R(n2, 2, tol="1e-6", rule=rule200)
        assert report.passed, report.failures()
        assert "pde-R[2]" in report

    def test_zero_lambda_skipped(self, classical, rule40):
        report = pde_residual_R(classical, 2, rule=rule40)
        assert report["pde-R[1]"].skipped


class TestSigmaPDE:
    @pytest.mark.parametrize("n", [2, 3])
    def test_n1(self, n1, rule40, n):
        report = sigma_pde_residual(n1, n, rule=rule40)
        assert report.passed, report.failures()
        for name in ("sigma-pde", "beta-sigma", "r-sigma[1]", "R-sigma[1]", "sigma-pv", "sigma-pv-jimbo"):
            assert not report[name].skipped

    def test_opposite_root_fails(self, n1, rule40):
        report = sigma_pde_residual(n1, 3, rule=rule40)
        assert report.info["R-sigma-opposite[1]"] > mp.mpf("1e-6")

    def test_n2(self, n2, rule200):
        report = sigma_pde_residual(n2, 2, tol="1e-6", rule=rule200)
        assert report.passed, report.failures()
        assert "sigma-n2" in report


class TestLattice:
    def test_points(self):
        points = lattice_points((1, 2))
        assert len(points) == 9
        assert (mp.mpf(1), mp.mpf(2)) in points
        assert len(lattice_points((1,), per_axis=2)) == 2
        with pytest.raises(ParameterError):
            lattice_points((1,), per_axis=0)

    def test_residuals(self, n1, rule40):
        report = lattice_residuals(toda_residuals, n1, 3, per_axis=2, rule=rule40)
        assert report.passed
        assert "@0:te1" in report
        assert "@1:te2" in report
