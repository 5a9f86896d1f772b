import numpy as np
import pytest

from fractions import Fraction

from .. import (
    Verdict,
    classification_check,
    classify_element,
    group_property_check,
    inversion_continuity_check,
    inversion_continuity_sweep,
    invertibility_radius,
    openness_check,
    perturbation_bound_check,
    perturbation_scaling,
    perturbation_sweep,
)
from ...algebra import NormVariant, OperatorAlgebra, PointwiseAlgebra, SeriesAlgebra, UnitizationAlgebra
from ...core.report import Outcome
from ...errors import NonInvertibleError, PreconditionError


POINTWISE = PointwiseAlgebra.create(m=3)
L1_SERIES = SeriesAlgebra.create(degree=6, norm_variant=NormVariant.L1_CORRECTED)
OPERATOR = OperatorAlgebra.create(n=2, d=3)


class TestClassify:
    def test_pointwise(self):
        alg = PointwiseAlgebra.create(m=3, exact=True)
        result = classify_element(alg.element(1, 2, 3), alg)
        assert result.verdict is Verdict.INVERTIBLE
        assert result.inverse == alg.element(1, Fraction(1, 2), Fraction(1, 3))
        assert result.residual == 0

        result = classify_element(alg.element(0, 1, 1), alg)
        assert result.verdict is Verdict.NON_INVERTIBLE
        assert result.witness['data'] == {'zero_coordinates': [0]}

    def test_series(self):
        alg = SeriesAlgebra.create(degree=8, exact=True)
        result = classify_element(alg.series(1, 1), alg)
        assert result.invertible
        assert result.inverse == alg.series(*[(-1) ** j for j in range(9)])

    def test_operator(self):
        result = classify_element(OPERATOR.element([[1, 1, 0], [0, 1, 0], [0, 0, 0]]), OPERATOR)
        assert not result.invertible

    def test_group_property(self):
        for alg in (PointwiseAlgebra.create(m=3, exact=True), L1_SERIES, OPERATOR,
                    UnitizationAlgebra.create(PointwiseAlgebra.create(m=2))):
            report = group_property_check(alg, samples=30, seed=4)
            assert report.passed, report.counterexample

    def test_classification_sweep(self):
        for alg in (POINTWISE, L1_SERIES, OPERATOR, UnitizationAlgebra.create(PointwiseAlgebra.create(m=2))):
            report = classification_check(alg, samples=50, seed=6)
            assert report.passed, report.counterexample


class TestRadius:
    def test_unit(self):
        assert np.isclose(invertibility_radius(POINTWISE.unit(), POINTWISE), 1)

    def test_reciprocal(self):
        assert np.isclose(invertibility_radius(POINTWISE.element(2, 4, 5), POINTWISE), 2)

    def test_non_invertible(self):
        with pytest.raises(NonInvertibleError):
            invertibility_radius(POINTWISE.element(0, 4, 5), POINTWISE)

    @pytest.mark.parametrize('alg', [POINTWISE, L1_SERIES, OPERATOR], ids=['pointwise', 'series', 'operator'])
    def test_openness(self, alg):
        report = openness_check(alg, samples=10, seed=8)
        assert report.passed, report.counterexample
        assert report.samples == 1000


class TestContinuity:
    def test_same_point(self):
        x0 = POINTWISE.element(2, 4, 5)
        report = inversion_continuity_check(x0, x0, POINTWISE)
        assert report.passed
        assert report.details['lhs'] == report.details['rhs'] == 0

    def test_reciprocal(self):
        report = inversion_continuity_check(POINTWISE.unit(), POINTWISE.element(1.1, 1, 1), POINTWISE)
        assert report.passed
        assert np.isclose(report.details['lhs'], 1 - 1 / 1.1)
        assert np.isclose(report.details['rhs'], 0.2)

    def test_gate(self):
        with pytest.raises(PreconditionError):
            inversion_continuity_check(POINTWISE.unit(), POINTWISE.element(2, 1, 1), POINTWISE)

    def test_sweep(self):
        assert inversion_continuity_sweep(POINTWISE, samples=1000, seed=0).passed
        assert inversion_continuity_sweep(OPERATOR, samples=100, seed=0).passed


class TestPerturbation:
    def test_zero(self):
        report = perturbation_bound_check(POINTWISE.unit(), POINTWISE.zero(), POINTWISE)
        assert report.passed
        assert report.details['lhs'] == 0

    def test_scalar_identity(self):
        report = perturbation_bound_check(POINTWISE.unit(), POINTWISE.element(0.1, 0, 0), POINTWISE)
        assert report.passed
        assert np.isclose(report.details['lhs'], 0.01 / 1.1)
        assert np.isclose(report.details['rhs'], 0.02)

    @pytest.mark.parametrize('eps', [0.01, 0.05, 0.1, 0.2, 0.3, 0.4])
    def test_epsilon_range(self, eps):
        report = perturbation_bound_check(POINTWISE.unit(), POINTWISE.element(eps, 0, 0), POINTWISE)
        assert report.passed
        assert np.isclose(report.details['lhs'], eps ** 2 / (1 + eps))

    def test_gate(self):
        with pytest.raises(PreconditionError):
            perturbation_bound_check(POINTWISE.unit(), POINTWISE.element(0.5, 0, 0), POINTWISE)

    def test_sweep(self):
        for alg in (POINTWISE, L1_SERIES, OPERATOR):
            report = perturbation_sweep(alg, samples=200, seed=2)
            assert report.passed, report.counterexample

    def test_quadratic_scaling(self):
        for alg in (POINTWISE, L1_SERIES, OPERATOR):
            report = perturbation_scaling(alg)
            assert report.outcome is Outcome.PASS
            assert abs(report.details['slope'] - 2) < 0.1
