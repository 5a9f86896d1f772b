import numpy as np
import pytest

from fractions import Fraction
from hypothesis import given, strategies as st

from ..linalg import determinant, inverse, is_dependent, null_vector, rank
from ..scalar import ComplexScalar, ONE, ZERO, as_coords, random_scalars, scalar_from_json, scalar_to_json
from ...errors import NonInvertibleError


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=30)
scalars = st.builds(ComplexScalar, rationals, rationals)


class TestComplexScalar:
    def test_arithmetic(self):
        a = ComplexScalar(1, 2)
        b = ComplexScalar('1/2', -1)
        assert a + b == ComplexScalar('3/2', 1)
        assert a - b == ComplexScalar('1/2', 3)
        assert a * b == ComplexScalar('5/2', 0)
        assert (a / b) * b == a
        assert a ** 2 == a * a
        assert a ** -1 == ONE / a
        assert -a == ComplexScalar(-1, -2)

    def test_mixed_operands(self):
        a = ComplexScalar(3, 0)
        assert a + 1 == ComplexScalar(4)
        assert 1 - a == ComplexScalar(-2)
        assert 2 * a == ComplexScalar(6)
        assert a * 0.5 == ComplexScalar('3/2')
        assert a == 3
        assert a / 1j == ComplexScalar(0, -3)

    def test_truthiness(self):
        assert not ZERO
        assert ComplexScalar(0, '1/7')
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_magnitudes(self):
        z = ComplexScalar(3, 4)
        assert z.abs2() == 25
        assert abs(z) == 5.0
        assert complex(z) == 3 + 4j
        assert z.conjugate() == ComplexScalar(3, -4)

    @given(scalars, scalars, scalars)
    def test_field_laws(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        if b:
            assert (a / b) * b == a

    def test_json(self):
        assert scalar_to_json(ComplexScalar('1/3', 2)) == {'re': '1/3', 'im': '2'}
        assert scalar_from_json({'re': '1/3', 'im': 2}, exact=True) == ComplexScalar('1/3', 2)
        assert scalar_from_json(0.5, exact=False) == 0.5 + 0j
        with pytest.raises(ValueError):
            scalar_from_json({'re': 1, 'imag': 0}, exact=True)

    def test_coords(self):
        approx = as_coords([1, 2j])
        assert approx.dtype == np.complex128
        assert not approx.flags.writeable

        exact = as_coords([Fraction(1, 2), 3])
        assert exact.dtype == object
        assert exact[0] == ComplexScalar('1/2')

    def test_random_scalars(self):
        rng = np.random.default_rng(0)
        values = random_scalars(rng, 100, exact=True, scale=2.0)
        assert all(v.re.denominator <= 64 and v.im.denominator <= 64 for v in values)
        assert max(abs(v) for v in values) <= 2.0 + 1 / 32

        again = random_scalars(np.random.default_rng(0), 100, exact=True, scale=2.0)
        assert list(values) == list(again)


class TestLinalg:
    def test_determinant(self):
        m = as_coords([[2, 1], [1, 3]], exact=True)
        assert determinant(m) == 5
        assert np.allclose(determinant(as_coords([[2, 1], [1, 3]])), 5)

        swapped = as_coords([[0, 1], [1, 0]], exact=True)
        assert determinant(swapped) == -1

    def test_inverse(self):
        m = as_coords([[2, 1], [1, 3]], exact=True)
        inv = inverse(m)
        assert inv[0, 0] == ComplexScalar('3/5')
        assert inv[0, 1] == ComplexScalar('-1/5')

        with pytest.raises(NonInvertibleError):
            inverse(as_coords([[1, 2], [2, 4]], exact=True))
        with pytest.raises(NonInvertibleError):
            inverse(as_coords([[1, 2], [2, 4]]))

    def test_rank_and_kernel(self):
        m = as_coords([[1, 2], [2, 4]], exact=True)
        assert rank(m) == 1
        v = null_vector(m)
        assert all(x == 0 for x in m @ v)

    def test_dependence(self):
        assert is_dependent([as_coords([1, 1]), as_coords([2, 2])])
        assert not is_dependent([as_coords([1, 0]), as_coords([1, 1e-3])])
        assert is_dependent([as_coords([1, 1], exact=True), as_coords([2, 2], exact=True)])
        assert not is_dependent([as_coords([1, 0], exact=True), as_coords([1, '1/1000'], exact=True)])
