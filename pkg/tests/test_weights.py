import pytest
import mpmath as mp

from laguerre_lab.errors import DomainError, ParameterError
from laguerre_lab.weights import (
    Deformation,
    WeightParams,
    deformation_factor,
    eval_potential,
    eval_potential_derivative,
    eval_weight,
    potential_divided_difference,
    preset,
)


class TestWeightParams:
    def test_presets(self, n1, n2, classical):
        assert n1.alpha == 1
        assert n1.deformations == (Deformation(mp.mpf(1), mp.mpf(1)),)
        assert n2.n_deformations == 2
        assert mp.almosteq(n2.total_exponent, 1, 1e-90)
        assert classical.exponents == (0,)

    def test_decimal_strings(self):
        params = WeightParams("0.1", [("0.3", "0.7")], 333)
        with mp.workprec(333):
            assert params.alpha == mp.mpf(1) / 10

    def test_no_deformations(self):
        with pytest.raises(ParameterError):
            WeightParams("2")
        with pytest.raises(ParameterError):
            WeightParams("2", [], 333)
        with pytest.raises(ParameterError):
            WeightParams.from_dict({"alpha": "2"})

    def test_classical_as_zero_exponent(self, classical):
        assert classical.n_deformations == 1
        assert classical.total_exponent == 0
        assert classical.is_convex

    def test_invalid_alpha(self):
        with pytest.raises(ParameterError):
            WeightParams("0", [("1", "1")])
        with pytest.raises(ParameterError):
            WeightParams("abc")

    def test_invalid_shift(self):
        with pytest.raises(ParameterError):
            WeightParams("1", [("0", "1")])
        with pytest.raises(ParameterError):
            WeightParams("1", [("-1", "1")])

    def test_duplicate_shift(self):
        with pytest.raises(ParameterError):
            WeightParams("1", [("1", "1"), ("1", "2")])

    def test_precision(self):
        with pytest.raises(ParameterError):
            WeightParams("1", precision_bits=32)

    def test_with_shifts(self, n2):
        moved = n2.with_shifts(["2", "3"])
        assert moved.shifts == (2, 3)
        assert moved.exponents == n2.exponents
        with pytest.raises(ParameterError):
            n2.with_shifts(["1"])

    def test_json(self, n2):
        again = WeightParams.from_json(n2.to_json())
        assert again.precision_bits == n2.precision_bits
        assert mp.almosteq(again.alpha, n2.alpha, 1e-90)
        for a, b in zip(again.deformations, n2.deformations):
            assert mp.almosteq(a.t, b.t, 1e-90)
            assert mp.almosteq(a.lam, b.lam, 1e-90)
        with pytest.raises(ParameterError):
            WeightParams.from_json("{not json")
        with pytest.raises(ParameterError):
            WeightParams.from_dict({"deformations": []})

    def test_convexity(self):
        assert not WeightParams("1", [("1", "-1")]).is_convex

    def test_unknown_preset(self):
        with pytest.raises(ParameterError):
            preset("N7")


class TestWeightFunctions:
    def test_weight(self, n1):
        assert mp.almosteq(eval_weight(n1, 2), 6 * mp.exp(-2), 1e-90)
        assert eval_weight(n1, 0) == 0
        with pytest.raises(DomainError):
            eval_weight(n1, -1)

    def test_deformation_factor(self, n2):
        expected = mp.mpf("2.5") ** mp.mpf("0.7") * mp.mpf("3.5") ** mp.mpf("0.3")
        assert mp.almosteq(deformation_factor(n2, 2), expected, 1e-90)

    def test_potential(self, n1):
        assert mp.almosteq(eval_potential(n1, 1), 1 - mp.log(2), 1e-90)
        with pytest.raises(DomainError):
            eval_potential(n1, 0)

    def test_potential_derivatives(self, n1):
        assert mp.almosteq(eval_potential_derivative(n1, 1), mp.mpf(-1) / 2, 1e-90)
        assert mp.almosteq(eval_potential_derivative(n1, 1, order=2), mp.mpf(5) / 4, 1e-90)
        with pytest.raises(ParameterError):
            eval_potential_derivative(n1, 1, order=3)

    def test_divided_difference(self, n1):
        direct = (eval_potential_derivative(n1, 1) - eval_potential_derivative(n1, 2)) / (1 - 2)
        assert mp.almosteq(potential_divided_difference(n1, 1, 2), direct, 1e-90)
        assert mp.almosteq(potential_divided_difference(n1, 1, 2), mp.mpf(2) / 3, 1e-90)
        with pytest.raises(DomainError):
            potential_divided_difference(n1, 0, 2)
