import io

import pytest
import mpmath as mp

from laguerre_lab.errors import ParameterError
from laguerre_lab.scaling import (
    build_scaling_sequence,
    delta_covariance_residual,
    extrapolate,
    extrapolate_values,
    scaled_pde_residuals,
    scaled_point,
)

# lambda = 1 keeps the deformation polynomial, so an 80-node rule is exact up to n = 64
M = 80
N_LIST = (8, 16, 32, 64)


@pytest.fixture(scope="module")
def n1_sequence(n1):
    return build_scaling_sequence(n1, ["1"], N_LIST, m=M)


class TestExtrapolation:
    def test_constant(self):
        e = extrapolate_values([8, 16, 32], [2, 2, 2], 333)
        assert e.limit == 2
        assert e.error == 0
        assert not e.low_confidence

    def test_first_order_model(self):
        values = [3 + mp.mpf(5) / n for n in (8, 16, 32)]
        e = extrapolate_values([8, 16, 32], values, 333)
        assert mp.almosteq(e.limit, 3, 1e-60)
        assert e.order == 1
        assert e.error < mp.mpf("1e-60")

    def test_second_order_fit(self):
        values = [1 + mp.mpf(1) / n**2 + mp.mpf(1) / n**3 for n in (8, 16, 32, 64)]
        e = extrapolate_values([8, 16, 32, 64], values, 333)
        assert e.order == 2
        assert mp.almosteq(e.limit, 1, 1e-40)

    def test_non_contracting(self):
        e = extrapolate_values([8, 16, 32], [1, 2, 4], 333)
        assert e.low_confidence
        assert e.limit == 4
        assert e.error == 2

    def test_gaps(self):
        values = [3 + mp.mpf(5) / n for n in (8, 16, 32)]
        e = extrapolate_values([4, 8, 16, 32], [None] + values, 333)
        assert mp.almosteq(e.limit, 3, 1e-60)

    def test_too_short(self):
        with pytest.raises(ParameterError):
            extrapolate_values([8, 16, 32], [1, None, 2], 333)


class TestScalingSequence:
    def test_zero_field(self, classical):
        seq = build_scaling_sequence(classical, ["1"], (4, 8, 16), m=40)
        assert all(abs(v) < mp.mpf("1e-60") for v in seq.sigma_values)
        assert all(row[0] == 0 for row in seq.R_scaled)
        assert extrapolate(seq).error < mp.mpf("1e-60")

    def test_convergence(self, n1_sequence):
        assert n1_sequence.failures == {}
        v = n1_sequence.sigma_values
        diffs = [abs(b - a) for a, b in zip(v, v[1:])]
        for d0, d1 in zip(diffs, diffs[1:]):
            assert d0 / d1 > mp.mpf("1.5")

    def test_limits_agree(self, n1):
        point = scaled_point(n1, ["1"], N_LIST, m=M)
        R, r = point.R[0], point.r_over_n[0]
        assert abs(r.limit + R.limit) <= 10 * (R.error + r.error) + mp.mpf("1e-8")
        assert not point.low_confidence

    def test_extension_is_consistent(self, n1, n1_sequence):
        short = extrapolate(n1_sequence)
        long = extrapolate(build_scaling_sequence(n1, ["1"], N_LIST + (128,), m=M + 50))
        assert abs(long.limit - short.limit) <= 10 * short.error + mp.mpf("1e-12")

    def test_csv(self, n1_sequence):
        buf = io.StringIO()
        n1_sequence.write_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "n,sigma,R1,r1_over_n"
        assert len(lines) == 5

    def test_invalid(self, n1, n2):
        with pytest.raises(ParameterError):
            build_scaling_sequence(n1, ["1"], (16, 8))
        with pytest.raises(ParameterError):
            build_scaling_sequence(n2, ["1"], N_LIST)
        with pytest.raises(ParameterError):
            build_scaling_sequence(n1, ["-1"], N_LIST)


class TestScaledPDE:
    def test_zero_field_skipped(self, classical):
        report = scaled_pde_residuals(classical, ["1"], m=40)
        assert report["scaled-sigma"].skipped
        assert report["scaled-R[1]"].skipped

    @pytest.mark.parametrize("s", ["0.5", "1", "2"])
    def test_n1(self, n1, s):
        report = scaled_pde_residuals(n1, [s], n_list=N_LIST, m=M)
        assert report.passed, report.failures()
        for name in ("sigma-piii", "pv-Y", "scaled-R[1]", "scaled-sigma", "limr+limR[1]", "limR-grad[1]"):
            assert report[name].empirical
        assert report.info["limR-sign[1]"] in (-1, 1)


class TestDeltaCovariance:
    def test_n1(self, n1):
        report = delta_covariance_residual(n1, ["1"], 4, m=40)
        assert report.passed

    def test_degree(self, n1):
        with pytest.raises(ParameterError):
            delta_covariance_residual(n1, ["1"], 0)
