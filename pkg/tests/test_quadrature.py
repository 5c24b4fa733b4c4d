import pytest
import mpmath as mp

from laguerre_lab.errors import NumericError, ParameterError
from laguerre_lab.quadrature import (
    build_rule,
    deformed_weights,
    integrate,
    moment,
    moment_refinement,
    rule_for,
)
from laguerre_lab.weights import WeightParams


class TestBuildRule:
    def test_two_nodes(self):
        rule = build_rule(0, 2)
        assert mp.almosteq(rule.nodes[0], 2 - mp.sqrt(2), 1e-90)
        assert mp.almosteq(rule.nodes[1], 2 + mp.sqrt(2), 1e-90)
        assert mp.almosteq(rule.weights[0], (2 + mp.sqrt(2)) / 4, 1e-90)
        assert mp.almosteq(rule.weights[1], (2 - mp.sqrt(2)) / 4, 1e-90)

    def test_weights_sum(self):
        rule = build_rule("1.5", 30)
        assert mp.almosteq(mp.fsum(rule.weights), mp.gamma(mp.mpf("2.5")), 1e-90)

    def test_nodes_increasing(self, rule40):
        assert rule40.m == 40
        assert all(a < b for a, b in zip(rule40.nodes, rule40.nodes[1:]))
        assert rule40.nodes[0] > 0

    def test_polynomial_exactness(self):
        rule = build_rule(1, 4)
        # int x**5 x exp(-x) = 6!, degree 5 <= 2m - 1
        assert mp.almosteq(integrate(rule, lambda x: x**5), 720, 1e-90)

    def test_memoised(self):
        assert build_rule(1, 12) is build_rule(1, 12)

    def test_invalid(self):
        with pytest.raises(ParameterError):
            build_rule(1, 1)
        with pytest.raises(ParameterError):
            build_rule(-1, 10)
        with pytest.raises(ParameterError):
            build_rule(1, 10, precision_bits=16)


class TestIntegrate:
    def test_non_finite(self):
        rule = build_rule(1, 4)
        with pytest.raises(NumericError):
            integrate(rule, lambda x: mp.inf)


class TestMoments:
    def test_n1_moments(self, n1, rule40):
        # mu_j = (j + 2)! + (j + 1)!
        for j, expected in enumerate([3, 8, 30, 144]):
            assert mp.almosteq(moment(n1, j, rule40), expected, 1e-90)

    def test_alpha_mismatch(self, n1):
        with pytest.raises(ParameterError):
            moment(n1, 0, build_rule(2, 10))
        with pytest.raises(ParameterError):
            moment(n1, -1, build_rule(1, 10))

    def test_deformed_weights(self, n1, rule40):
        weights = deformed_weights(n1, rule40)
        assert mp.almosteq(mp.fsum(weights), 3, 1e-90)

    def test_rule_for(self, n1):
        rule = rule_for(n1, 20)
        assert rule.alpha == n1.alpha
        assert rule.precision_bits == n1.precision_bits

    def test_refinement(self, n1):
        assert moment_refinement(n1, 3, 20) < mp.mpf("1e-80")

    def test_refinement_non_polynomial(self):
        params = WeightParams("1", [("0.5", "0.7")])
        assert moment_refinement(params, 0, 40) > mp.mpf("1e-60")
