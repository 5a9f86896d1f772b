import numpy as np
import pytest

from fractions import Fraction

from .. import (
    NeumannResult,
    near_identity_inverse,
    neumann_inverse,
    neumann_soundness_check,
    resolvent_check,
    resolvent_inverse,
)
from ..neumann import terms_needed
from ...algebra import NormVariant, OperatorAlgebra, PointwiseAlgebra, SeriesAlgebra
from ...errors import PreconditionError


def assert_coords(x, expected):
    assert np.allclose(x.to_approximate().coords, expected, atol=1e-8)


class TestTermsNeeded:
    def test_geometric(self):
        assert terms_needed(0.5, 1e-3, 100) == (10, False)

    def test_zero_generator(self):
        assert terms_needed(0.0, 1e-9, 100) == (0, False)

    def test_cap(self):
        assert terms_needed(0.9, 1e-12, 5) == (5, True)

    def test_contraction_validated(self):
        alg = PointwiseAlgebra.create(m=3)
        with pytest.raises(ValueError):
            NeumannResult(approx_inverse=alg.unit(), terms_used=0, contraction_q=1.0, tail_bound=0.0,
                          residual=0.0, left_residual=0.0, certified=True)


class TestNeumannInverse:
    def test_zero(self):
        alg = PointwiseAlgebra.create(m=3)
        result = neumann_inverse(alg.zero(), alg)
        assert result.approx_inverse == alg.unit()
        assert result.tail_bound == 0
        assert result.terms_used == 0

    def test_constant(self):
        alg = PointwiseAlgebra.create(m=3)
        result = neumann_inverse(alg.element(0.5, 0.5, 0.5), alg)
        assert_coords(result.approx_inverse, [2, 2, 2])

    def test_reciprocal(self):
        alg = PointwiseAlgebra.create(m=3)
        result = neumann_inverse(alg.element(0.5, 0.25, 0.1), alg, tol=1e-10)
        assert np.isclose(result.contraction_q, 0.5)
        assert_coords(result.approx_inverse, [2, 4 / 3, 10 / 9])
        assert result.certified
        assert result.residual <= result.tail_bound + 1e-10

    def test_exact_tail(self):
        alg = PointwiseAlgebra.create(m=3, exact=True)
        result = neumann_inverse(alg.element(Fraction(1, 2), Fraction(1, 4), 0), alg, tol=1e-6)
        assert result.certified
        assert result.residual <= result.tail_bound

    def test_operator(self):
        alg = OperatorAlgebra.create(n=2, d=3)
        x = alg.sample(np.random.default_rng(11), radius=0.5)
        result = neumann_inverse(x, alg)
        assert result.certified
        assert np.allclose(alg.mul(alg.unit() - x, result.approx_inverse).matrix, np.eye(3), atol=1e-6)

    def test_series_hits_degree(self):
        alg = SeriesAlgebra.create(degree=8, exact=True, norm_variant=NormVariant.L1_CORRECTED)
        result = neumann_inverse(alg.series(0, Fraction(1, 2)), alg)
        assert result.truncated
        assert result.terms_used == 8
        assert result.approx_inverse == alg.invert(alg.series(1, Fraction(-1, 2)))
        assert result.residual == 0

    def test_precondition(self):
        alg = PointwiseAlgebra.create(m=3)
        with pytest.raises(PreconditionError):
            neumann_inverse(alg.element(1, 0, 0), alg)


class TestNearIdentity:
    def test_unit(self):
        alg = PointwiseAlgebra.create(m=3)
        assert near_identity_inverse(alg.unit(), alg).approx_inverse == alg.unit()

    def test_reciprocal(self):
        alg = PointwiseAlgebra.create(m=3)
        result = near_identity_inverse(alg.element(0.8, 1.2, 1.0), alg)
        assert np.isclose(result.contraction_q, 0.2)
        assert_coords(result.approx_inverse, [1.25, 5 / 6, 1])

    def test_far_from_unit(self):
        alg = PointwiseAlgebra.create(m=3)
        with pytest.raises(PreconditionError):
            near_identity_inverse(alg.element(-0.5, 1, 1), alg)


class TestResolvent:
    def test_zero(self):
        alg = PointwiseAlgebra.create(m=3)
        assert_coords(resolvent_inverse(2, alg.zero(), alg).approx_inverse, [0.5, 0.5, 0.5])

    def test_reciprocal(self):
        alg = PointwiseAlgebra.create(m=3)
        result = resolvent_inverse(2, alg.element(1, 0.5, -0.5), alg)
        assert np.isclose(result.contraction_q, 0.5)
        assert_coords(result.approx_inverse, [1, 2 / 3, 0.4])

    def test_boundary(self):
        alg = PointwiseAlgebra.create(m=3)
        with pytest.raises(PreconditionError):
            resolvent_inverse(1, alg.element(1, 0, 0), alg)


class TestSweeps:
    @pytest.mark.parametrize('alg', [
        PointwiseAlgebra.create(m=4),
        OperatorAlgebra.create(n=2, d=3),
        SeriesAlgebra.create(degree=6, norm_variant=NormVariant.L1_CORRECTED),
    ], ids=['pointwise', 'operator', 'series'])
    def test_soundness(self, alg):
        report = neumann_soundness_check(alg, samples=200, seed=11)
        assert report.passed, report.counterexample
        assert report.name == 'invert'

    @pytest.mark.parametrize('alg', [
        PointwiseAlgebra.create(m=4),
        OperatorAlgebra.create(n=2, d=3),
    ], ids=['pointwise', 'operator'])
    def test_resolvent(self, alg):
        report = resolvent_check(alg, samples=100, seed=12)
        assert report.passed, report.counterexample

    def test_exact_pointwise(self):
        alg = PointwiseAlgebra.create(m=3, exact=True)
        assert neumann_soundness_check(alg, samples=5, seed=1, tol=1e-6).passed
