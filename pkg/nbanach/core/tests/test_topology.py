import pytest

from fractions import Fraction

from ..anchors import AnchorTuple
from ..report import CheckReport, Outcome
from ..sampling import SweepSettings, sweep
from ..topology import BallRegion, ball_membership, sequence_converges, sequence_is_cauchy
from ..vector import Vector
from ...errors import PreconditionError


ANCHORS = AnchorTuple.of(Vector([0, 0, 1]))


def _square(index, rng):
    return index * index + rng.integers(0, 1)


class TestSequences:
    def test_constant(self):
        x = Vector([1, 2, 3])
        assert sequence_converges([x] * 10, x, ANCHORS)
        assert sequence_is_cauchy([x] * 10, ANCHORS)

    def test_geometric(self):
        x, v = Vector([1, 2, 3]), Vector([1, 0, 0])
        seq = [x + v * 0.5 ** k for k in range(64)]
        assert sequence_converges(seq, x, ANCHORS)
        assert sequence_is_cauchy(seq, ANCHORS)

    def test_constant_distance(self):
        x, v = Vector([1, 2, 3]), Vector([0, 1, 0])
        seq = [x + v for _ in range(64)]
        assert not sequence_converges(seq, x, ANCHORS)
        assert sequence_is_cauchy(seq, ANCHORS)

    def test_oscillating(self):
        v = Vector([1, 0, 0])
        seq = [v * (-1) ** k for k in range(64)]
        assert not sequence_is_cauchy(seq, ANCHORS)

    def test_empty(self):
        with pytest.raises(PreconditionError):
            sequence_converges([], Vector([1, 0, 0]), ANCHORS)


class TestBalls:
    def test_center(self):
        c = Vector([1, 1, 1])
        assert ball_membership(c, 1.0, ANCHORS, c) is BallRegion.INSIDE_OPEN

    def test_exact_sphere(self):
        anchors = AnchorTuple.of(Vector.from_iterable([0, 0, 1], exact=True))
        c = Vector.from_iterable([0, 0, 0], exact=True)
        p = Vector.from_iterable([Fraction(3, 5), Fraction(4, 5), 7], exact=True)
        assert ball_membership(c, 1, anchors, p) is BallRegion.INSIDE_CLOSED_ONLY
        assert ball_membership(c, Fraction(1, 2), anchors, p) is BallRegion.OUTSIDE

    def test_approximate_sphere(self):
        p = Vector([0.6, 0.8, 7])
        assert ball_membership(Vector([0, 0, 0]), 1.0, ANCHORS, p) is BallRegion.ON_BOUNDARY

    def test_outside(self):
        p = Vector([2, 0, 0])
        assert ball_membership(Vector([0, 0, 0]), 1.0, ANCHORS, p) is BallRegion.OUTSIDE

    def test_radius(self):
        with pytest.raises(PreconditionError):
            ball_membership(Vector([0, 0, 0]), 0, ANCHORS, Vector([1, 0, 0]))


class TestSweep:
    def test_order_and_determinism(self):
        serial = sweep(_square, 20, seed=5)
        assert [r.index for r in serial] == list(range(20))
        assert [r.value for r in serial] == [i * i for i in range(20)]

    def test_parallel_matches_serial(self):
        parallel = sweep(_square, 20, seed=5, settings=SweepSettings(parallel=True, num_workers=2))
        assert [r.value for r in parallel] == [r.value for r in sweep(_square, 20, seed=5)]

    def test_report(self):
        report = CheckReport(name='demo', outcome=Outcome.FAIL, counterexample={'x': Vector([1, 0])},
                             flags=['TruncationWarning', 'ClampWarning', 'ClampWarning'])
        data = report.to_dict()
        assert data['outcome'] == 'fail'
        assert data['flags'] == ['ClampWarning', 'TruncationWarning']
        assert data['counterexample']['x']['coords'][0] == {'re': 1.0, 'im': 0.0}
