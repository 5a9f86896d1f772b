import math
import numpy as np
import pytest

from .. import gram
from ..anchors import AnchorTuple
from ..axioms import GramNorm, cauchy_schwarz_check, check_n_norm_axioms
from ..gram import GramMatrix, cauchy_schwarz_gap, gram_n_norm, gram_n_norm_squared, standard_n_inner
from ..report import Outcome
from ..vector import Vector
from ...errors import ClampWarning, DimensionMismatchError, NumericalBreakdownError


def vec(*coords, exact=False) -> Vector:
    return Vector.from_iterable(coords, exact=exact)


E2, E3 = vec(0, 1, 0), vec(0, 0, 1)


class TestVector:
    def test_length(self):
        assert vec(0, 1, 0).length == 1.0
        assert vec(3, 4, 0).length == 5.0
        assert np.allclose(vec(1j, 1, 1).length, math.sqrt(3))

    def test_inner(self):
        assert np.allclose(vec(1j, 0).inner(vec(1, 0)), 1j)
        assert np.allclose(vec(1, 0).inner(vec(1j, 0)), -1j)
        with pytest.raises(DimensionMismatchError):
            vec(1, 0).inner(vec(1, 0, 0))

    def test_binary_operations(self):
        a = vec(1, 2, 3)
        b = vec(1, 2, 3)
        assert a + b == vec(2, 4, 6) == b + a
        assert a - b == vec(0, 0, 0) == -(b - a)
        assert a * 3 == vec(3, 6, 9) == 3 * a == a + 2 * a == 5 * a - 2 * a
        assert a / 2. == vec(0.5, 1, 1.5)

    def test_exact(self):
        a = vec(1, 2, 3, exact=True)
        assert a.exact
        assert (a / 3).to_tuple()[0].re.denominator == 3
        assert a.to_approximate() == vec(1, 2, 3)
        assert a.to_dict() == {'coords': [{'re': str(v), 'im': '0'} for v in (1, 2, 3)]}


class TestNInner:
    def test_orthonormal(self):
        x = vec(1, 0, 0)
        assert np.allclose(standard_n_inner(x, x, AnchorTuple.of(E2, E3)), 1)

    def test_vanishing_first_row(self):
        assert np.allclose(standard_n_inner(vec(1, 0), vec(0, 1), AnchorTuple.of(vec(0, 1))), 0)

    def test_orthogonal_component(self):
        x = vec(2, 1, 0, exact=True)
        anchors = AnchorTuple.of(vec(0, 1, 0, exact=True), vec(0, 0, 1, exact=True))
        assert standard_n_inner(x, x, anchors) == 4

    def test_conjugate_symmetry(self):
        anchors = AnchorTuple.of(vec(1, 1j, 0, 2))
        x, y = vec(1, 2, 3j, 0), vec(0, 1 - 1j, 1, 1)
        assert np.allclose(standard_n_inner(x, y, anchors), np.conj(standard_n_inner(y, x, anchors)))

    def test_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            standard_n_inner(vec(1, 0), vec(0, 1), AnchorTuple.of(vec(0, 1, 0)))
        with pytest.raises(DimensionMismatchError):
            standard_n_inner(vec(1, 0), vec(0, 1), AnchorTuple.of(vec(0, 1), vec(1, 1)))


class TestGramNorm:
    def test_volumes(self):
        assert np.allclose(gram_n_norm(vec(1, 0, 0), AnchorTuple.of(E2, E3)), 1)
        assert np.allclose(gram_n_norm(vec(2, 0), AnchorTuple.of(vec(0, 3))), 6)
        assert gram_n_norm(vec(1, 1), AnchorTuple.of(vec(2, 2))) == 0

    def test_gram_matrix(self):
        matrix = GramMatrix.of(vec(1, 2j, 0), AnchorTuple.of(vec(0, 1, 1)))
        assert matrix.n == 2
        assert matrix.is_positive_semidefinite()
        assert np.allclose(matrix.determinant(), gram_n_norm_squared(vec(1, 2j, 0), AnchorTuple.of(vec(0, 1, 1))))

        with pytest.raises(NumericalBreakdownError):
            GramMatrix(np.array([[1, 2], [0, 1]], dtype=np.complex128))

    def test_exact_agrees_with_approximate(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            rows = rng.integers(-5, 6, size=(3, 5)) + 1j * rng.integers(-5, 6, size=(3, 5))
            approx = [Vector.from_iterable(r) for r in rows]
            exact = [Vector.from_iterable(r, exact=True) for r in rows]
            a = gram_n_norm(approx[0], AnchorTuple(anchors=approx[1:]))
            b = gram_n_norm(exact[0], AnchorTuple(anchors=exact[1:]))
            assert abs(a - b) <= 1e-9 * max(1.0, b)

    def test_span_degeneracy(self):
        anchors = AnchorTuple.of(vec(1, 2, 0, 1), vec(0, 1, 1j, 0))
        x = anchors[0] * 3 - anchors[1] * 2j
        assert gram_n_norm(x, anchors) <= 1e-9

    def test_clamped_determinant(self, monkeypatch):
        anchors = AnchorTuple.of(vec(0, 1))
        monkeypatch.setattr(gram, 'determinant', lambda entries: -1e-20 + 0j)
        with pytest.warns(ClampWarning):
            assert gram_n_norm(vec(1, 0), anchors) == 0

        monkeypatch.setattr(gram, 'determinant', lambda entries: -1.0 + 0j)
        with pytest.raises(NumericalBreakdownError):
            gram_n_norm(vec(1, 0), anchors)


class TestCauchySchwarz:
    def test_equality_case(self):
        anchors = AnchorTuple.of(E3)
        x = vec(1, 2, 3)
        assert abs(cauchy_schwarz_gap(x, x, anchors)) <= 1e-9

    def test_orthogonal(self):
        assert np.allclose(cauchy_schwarz_gap(vec(1, 0, 0), vec(0, 1, 0), AnchorTuple.of(E3)), 1)

    def test_sweep(self):
        report = cauchy_schwarz_check(dim=4, n=3, samples=1000, seed=0)
        assert report.outcome is Outcome.PASS
        assert report.details['min_gap'] >= -1e-9


class TestAxioms:
    def test_gram_norm(self):
        report = check_n_norm_axioms(GramNorm(n=3, dim=4), samples=500, seed=1)
        assert report.outcome is Outcome.PASS, report.counterexample
        assert report.samples == 500 and report.seed == 1

    def test_gram_norm_exact(self):
        report = check_n_norm_axioms(GramNorm(n=2, dim=3, exact=True), samples=50, seed=2)
        assert report.passed

    def test_gram_norm_large(self):
        assert check_n_norm_axioms(GramNorm(n=4, dim=6), samples=100, seed=3).passed

    def test_broken_norm(self):
        import attr

        @attr.s(slots=True, frozen=True, kw_only=True)
        class SquaredGramNorm(GramNorm):
            def __call__(self, elements):
                return GramNorm.__call__(self, elements) ** 2

        report = check_n_norm_axioms(SquaredGramNorm(n=2, dim=3), samples=50, seed=4)
        assert report.outcome is Outcome.FAIL
        assert report.counterexample['axiom'] in {'N3', 'N4'}
        assert report.to_dict()['counterexample']['elements'][0]['type'] == 'Vector'
