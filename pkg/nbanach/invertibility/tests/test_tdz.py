import numpy as np
import pytest

from fractions import Fraction

from .. import NoWitness, Side, TdzWitness, boundary_tdz_witness, classify_element, tdz_scan, tdz_subset_check
from ...algebra import OperatorAlgebra, PointwiseAlgebra, SeriesAlgebra, UnitizationAlgebra
from ...errors import PreconditionError


POINTWISE = PointwiseAlgebra.create(m=3)


class TestScan:
    def test_zero_coordinate(self):
        z = POINTWISE.element(0, 1, 1)
        witness = tdz_scan(z, POINTWISE)
        assert isinstance(witness, TdzWitness)
        assert witness.divisor_of_zero
        assert witness.side is Side.LEFT
        assert np.isclose(POINTWISE.norm(witness.sequence[0]), 1)
        assert not classify_element(z, POINTWISE).invertible

    def test_unit(self):
        result = tdz_scan(POINTWISE.unit(), POINTWISE)
        assert isinstance(result, NoWitness)
        assert np.isclose(result.min_decay, 1)
        assert "not a proof" in result.message

    def test_zero_on_anchor_coordinate(self):
        # the indicator of coordinate 1 is an anchor, so the scan shifts it by 2^-k e
        z = POINTWISE.element(1, 0, 1)
        witness = tdz_scan(z, POINTWISE)
        assert isinstance(witness, TdzWitness)
        assert witness.decay[-1] <= 1e-6
        assert all(np.isclose(POINTWISE.norm(zk), 1) for zk in witness.sequence)

    def test_series(self):
        alg = SeriesAlgebra.create(degree=6, exact=True)
        witness = tdz_scan(alg.series(0, 1, 1), alg)
        assert isinstance(witness, TdzWitness)
        assert witness.divisor_of_zero
        assert isinstance(tdz_scan(alg.series(1, 1), alg), NoWitness)

    def test_operator(self):
        alg = OperatorAlgebra.create(n=2, d=3)
        witness = tdz_scan(alg.element([[0, 0, 0], [0, 1, 0], [0, 0, 1]]), alg)
        assert isinstance(witness, TdzWitness)
        assert witness.decay[-1] <= 1e-6

    def test_unitization(self):
        alg = UnitizationAlgebra.create(PointwiseAlgebra.create(m=2, exact=True))
        z = alg.pair(alg.base.element(3, 5), 0)
        witness = tdz_scan(z, alg)
        assert isinstance(witness, TdzWitness)
        assert witness.divisor_of_zero


class TestBoundary:
    def test_coordinate_approach(self):
        x = POINTWISE.element(0, 1, 1)
        approach = [POINTWISE.element(1 / k, 1, 1) for k in range(1, 21)]
        witness = boundary_tdz_witness(x, approach, POINTWISE)
        assert np.allclose([POINTWISE.norm(xk) for xk in witness.sequence], 1)
        assert np.allclose(witness.sequence[-1].coords, [1, 1 / 20, 1 / 20])
        assert np.allclose(witness.decay, [1 / k for k in range(1, 21)])

    def test_exact(self):
        alg = PointwiseAlgebra.create(m=3, exact=True)
        approach = [alg.element(Fraction(1, k), 1, 1) for k in range(1, 6)]
        witness = boundary_tdz_witness(alg.element(0, 1, 1), approach, alg)
        assert witness.sequence[-1] == alg.element(1, Fraction(1, 5), Fraction(1, 5))

    def test_invertible_target(self):
        with pytest.raises(PreconditionError):
            boundary_tdz_witness(POINTWISE.unit(), [POINTWISE.element(2, 1, 1)], POINTWISE)

    def test_constant_distance(self):
        approach = [POINTWISE.element(0.5, 1, 1)] * 5
        with pytest.raises(PreconditionError):
            boundary_tdz_witness(POINTWISE.element(0, 1, 1), approach, POINTWISE)


class TestSubset:
    @pytest.mark.parametrize('alg', [
        POINTWISE,
        PointwiseAlgebra.create(n=3, m=4, exact=True),
        SeriesAlgebra.create(degree=6),
        OperatorAlgebra.create(n=2, d=3),
        UnitizationAlgebra.create(PointwiseAlgebra.create(m=3)),
    ], ids=['pointwise', 'pointwise-exact', 'series', 'operator', 'unitization'])
    def test_witnesses_are_singular(self, alg):
        report = tdz_subset_check(alg, samples=200, seed=6)
        assert report.passed, report.counterexample
        assert report.details['witnesses'] >= 100
