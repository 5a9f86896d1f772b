import math
import numpy as np
import pytest

from fractions import Fraction

from .. import (
    NormVariant,
    OperatorAlgebra,
    PointwiseAlgebra,
    SeriesAlgebra,
    TruncatedSeries,
    UnitizationAlgebra,
    alg_mul,
    eq21_n_norm,
    l1_n_norm,
    operator_b_norm,
    sup_n_norm,
    unitize_mul,
)
from ...core import check_n_norm_axioms
from ...core.anchors import AnchorTuple
from ...core.report import Outcome
from ...core.scalar import ComplexScalar
from ...errors import DimensionMismatchError, NonInvertibleError, PreconditionError, TruncationWarning


def t_power(j: int, degree: int = 4) -> TruncatedSeries:
    return TruncatedSeries.monomial(j, degree)


class TestSeries:
    def test_convolution(self):
        alg = SeriesAlgebra.create(degree=4)
        assert alg_mul(alg.series(1, 1), alg.series(1, 1), alg) == alg.series(1, 2, 1)
        assert alg.mul(alg.unit(), alg.series(3, 0, 5)) == alg.series(3, 0, 5)

    def test_truncation(self):
        alg = SeriesAlgebra.create(degree=2)
        with pytest.warns(TruncationWarning):
            product = alg.mul(alg.series(1, 1), alg.series(0, 0, 1))
        assert product.truncated
        assert product == alg.series(0, 0, 1)

    def test_exact_polynomial_product(self):
        alg = SeriesAlgebra.create(degree=6, exact=True)
        product = alg.mul(alg.series(1, -2, 3), alg.series(0, 1, 0, 4))
        assert product == alg.series(0, 1, -2, 7, -8, 12)
        assert not product.truncated

    def test_eq21_norm(self):
        anchors = AnchorTuple.of(t_power(2))
        assert eq21_n_norm(TruncatedSeries.from_iterable([1, 2], degree=4), anchors) == 2
        assert eq21_n_norm(t_power(1) * 2, AnchorTuple.of(t_power(1))) == 0
        three = TruncatedSeries.from_iterable([3], degree=4)
        assert np.allclose(eq21_n_norm(three, AnchorTuple.of(t_power(1), t_power(2))), 3)

    def test_l1_norm(self):
        anchors = AnchorTuple.of(t_power(2))
        one_plus_t = TruncatedSeries.from_iterable([1, 1], degree=4)
        assert l1_n_norm(one_plus_t, anchors) == 2
        square = SeriesAlgebra.create(degree=4).mul(one_plus_t, one_plus_t)
        assert l1_n_norm(square, anchors) == 4 <= l1_n_norm(one_plus_t, anchors) ** 2
        assert l1_n_norm(t_power(2) * 3, anchors) == 0

    def test_inverse(self):
        alg = SeriesAlgebra.create(degree=8, exact=True)
        inverse = alg.invert(alg.series(1, 1))
        assert inverse == alg.series(*[(-1) ** j for j in range(9)])
        with pytest.raises(NonInvertibleError):
            alg.invert(alg.series(0, 1))

    def test_anchor_validation(self):
        with pytest.raises(DimensionMismatchError):
            SeriesAlgebra.create(n=4, degree=3)
        with pytest.raises(PreconditionError):
            SeriesAlgebra(degree=4, anchors=AnchorTuple.of(t_power(2) * 2))
        with pytest.raises(PreconditionError):
            SeriesAlgebra(degree=4, anchors=AnchorTuple.of(t_power(2), t_power(2) * -1))

    def test_characters(self):
        alg = SeriesAlgebra.create(degree=4)
        (evaluation,) = alg.characters()
        assert np.allclose(evaluation, [1, 0, 0, 0, 0])


class TestPointwise:
    def test_product(self):
        alg = PointwiseAlgebra.create(m=3)
        assert alg_mul(alg.element(1, 2, 3), alg.element(4, 5, 6), alg) == alg.element(4, 10, 18)

    def test_sup_norm(self):
        alg = PointwiseAlgebra.create(m=3)
        assert np.allclose(sup_n_norm(alg.element(0.5, 0.25, 0.1), alg.anchors), 0.5)
        assert alg.norm(alg.unit()) == 1
        assert alg.norm(alg.anchors[0] * 3) == 0

    def test_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            PointwiseAlgebra.create(m=3).mul(PointwiseAlgebra.create(m=4).unit(), PointwiseAlgebra.create(m=3).unit())

    def test_inverse(self):
        alg = PointwiseAlgebra.create(m=3, exact=True)
        assert alg.invert(alg.element(1, 2, 3)) == alg.element(1, Fraction(1, 2), Fraction(1, 3))
        with pytest.raises(NonInvertibleError) as info:
            alg.invert(alg.element(0, 1, 1))
        assert info.value.witness == {'zero_coordinates': [0]}

    def test_functionals(self):
        alg = PointwiseAlgebra.create(m=3)
        first = np.array([1, 0, 0], dtype=complex)
        assert alg.dual_norm(first, alg.functional_anchors(first)) == 1
        assert alg.dual_norm(np.array([0, 1, 0], dtype=complex), alg.anchors) is None
        assert len(alg.characters()) == 3


class TestOperator:
    def test_unit_law(self):
        alg = OperatorAlgebra.create(n=2, d=3)
        m = alg.element([[1, 2, 0], [0, 3, 0], [4, 5, 6]])
        assert alg.mul(alg.unit(), m) == m == alg.mul(m, alg.unit())

    def test_b_norm(self):
        alg = OperatorAlgebra.create(n=3, d=3)
        assert np.allclose(alg.norm(alg.unit()), 1)
        assert alg.norm(alg.zero()) == 0
        estimate = operator_b_norm(alg.element([[3, 0, 0], [0, 5, 0], [0, 0, 7]]), alg.anchors)
        assert estimate.exact
        assert np.allclose(estimate.value, 3)

    def test_exact_b_norm(self):
        alg = OperatorAlgebra.create(n=3, d=3, exact=True)
        assert np.allclose(alg.norm(alg.element([[3, 0, 0], [0, 5, 0], [0, 0, 7]])), 3)

    def test_unbounded(self):
        alg = OperatorAlgebra.create(n=2, d=3, budget=100)
        shift = alg.element([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
        estimate = alg.b_norm(shift)
        assert not estimate.exact
        assert estimate.upper == math.inf
        assert estimate.lower > 1e6

    def test_samples_are_bounded(self):
        alg = OperatorAlgebra.create(n=2, d=4)
        rng = np.random.default_rng(3)
        for _ in range(20):
            assert alg.norm(alg.sample(rng, radius=0.5)) < 0.5

    def test_divisor_of_zero(self):
        alg = OperatorAlgebra.create(n=2, d=3)
        z = alg.element([[0, 0, 0], [0, 1, 0], [0, 0, 1]])
        w = alg.tdz_candidate(z, 0)
        assert np.allclose(alg.mul(z, w).matrix, 0)
        assert np.allclose(alg.norm(w), 1)

    def test_character(self):
        alg = OperatorAlgebra.create(n=3, d=3)
        (corner,) = alg.characters()
        assert np.allclose(corner.reshape(3, 3), np.diag([1, 0, 0]))
        assert np.allclose(alg.dual_norm(corner, alg.anchors), 1)
        assert alg.dual_norm(np.eye(3).ravel(), alg.anchors) is None


class TestUnitization:
    @staticmethod
    def make(exact: bool = True) -> UnitizationAlgebra:
        return UnitizationAlgebra.create(PointwiseAlgebra.create(n=2, m=2, exact=exact))

    def test_product(self):
        alg = self.make()
        base = alg.base
        p, q = alg.pair(base.element(1, 0), 2), alg.pair(base.element(0, 1), 3)
        product = unitize_mul(p, q, base)
        assert product.x == base.element(3, 2)
        assert product.a == ComplexScalar(6)
        assert alg.mul(p, alg.unit()) == p == alg.mul(alg.unit(), p)
        assert alg.mul(alg.zero(), q) == alg.zero()

    def test_norm(self):
        alg = self.make()
        base = alg.base
        assert alg.norm(alg.unit()) == 1
        assert alg.norm(alg.pair(base.element(1, 0), 0)) == 1
        assert alg.norm(alg.pair(base.element(1, 0), 2)) == 3
        # independent of the anchor (a_2, 1) only through the scalar part
        assert alg.norm(alg.pair(base.anchors[0], 0)) == 0

    def test_inverse(self):
        alg = self.make()
        base = alg.base
        p = alg.pair(base.element(1, 0), 2)
        inverse = alg.invert(p)
        assert inverse == alg.pair(base.element(Fraction(-1, 6), 0), Fraction(1, 2))
        assert alg.mul(p, inverse) == alg.unit()
        with pytest.raises(NonInvertibleError):
            alg.invert(alg.pair(base.element(1, 0), 0))
        with pytest.raises(NonInvertibleError):
            alg.invert(alg.pair(base.element(-2, 0), 2))

    def test_annihilator(self):
        alg = self.make()
        z = alg.pair(alg.base.element(1, 5), 0)
        w = alg.tdz_candidate(z, 0)
        assert alg.mul(z, w).is_zero()
        assert alg.norm(w) > 0

    def test_no_bounded_characters(self):
        alg = self.make(exact=False)
        assert alg.characters() == []
        scalar_part = np.array([0, 0, 1], dtype=complex)
        assert alg.dual_norm(scalar_part, alg.anchors) is None

    def test_base_validation(self):
        with pytest.raises(PreconditionError):
            UnitizationAlgebra.create(OperatorAlgebra.create(d=3))
        with pytest.raises(ValueError):
            SeriesAlgebra.create(degree=4, norm_variant=NormVariant.SUP_COORDINATE)


class TestNormAxioms:
    @pytest.mark.parametrize('alg', [
        SeriesAlgebra.create(n=2, degree=8),
        SeriesAlgebra.create(n=2, degree=8, norm_variant=NormVariant.L1_CORRECTED),
        PointwiseAlgebra.create(n=3, m=4),
    ], ids=['eq21-series', 'l1-series', 'sup-pointwise'])
    def test_axioms_hold(self, alg):
        report = check_n_norm_axioms(alg.as_nnorm(), samples=500, seed=42)
        assert report.outcome is Outcome.PASS, report.counterexample
        assert report.samples >= 500
