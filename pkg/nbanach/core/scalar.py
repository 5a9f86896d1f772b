import attr
import enum
import math
import numbers
import numpy as np

from fractions import Fraction
from typing import Any, Iterable


class Arithmetic(enum.Enum):
    APPROXIMATE = 'approximate'
    EXACT = 'exact'


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    return Fraction(float(value))


@attr.s(slots=True, frozen=True, eq=False, repr=False)
class ComplexScalar:
    """
    Complex number with exact rational components.

    Arithmetic never rounds; mixing with Python or numpy numbers converts them exactly
    (floats are taken at their binary value).
    """

    re: Fraction = attr.ib(converter=_to_fraction, default=Fraction(0))
    im: Fraction = attr.ib(converter=_to_fraction, default=Fraction(0))

    @classmethod
    def coerce(cls, value: Any) -> "ComplexScalar":
        if isinstance(value, ComplexScalar):
            return value
        if isinstance(value, (complex, np.complexfloating)):
            return cls(value.real, value.imag)
        if isinstance(value, (numbers.Real, str)):
            return cls(value, 0)
        raise TypeError(f"cannot convert {type(value).__name__} to ComplexScalar")

    @staticmethod
    def _try_coerce(value: Any) -> "ComplexScalar | None":
        if isinstance(value, np.ndarray):
            return None
        try:
            return ComplexScalar.coerce(value)
        except TypeError:
            return None

    def __repr__(self) -> str:
        return f"ComplexScalar({self.re}, {self.im})"

    def __add__(self, other: Any) -> "ComplexScalar":
        other = self._try_coerce(other)
        if other is None:
            return NotImplemented
        return ComplexScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "ComplexScalar":
        other = self._try_coerce(other)
        if other is None:
            return NotImplemented
        return ComplexScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Any) -> "ComplexScalar":
        other = self._try_coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "ComplexScalar":
        other = self._try_coerce(other)
        if other is None:
            return NotImplemented
        return ComplexScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ComplexScalar":
        other = self._try_coerce(other)
        if other is None:
            return NotImplemented
        denominator = other.abs2()
        if denominator == 0:
            raise ZeroDivisionError("division by exact zero")
        numerator = self * other.conjugate()
        return ComplexScalar(numerator.re / denominator, numerator.im / denominator)

    def __rtruediv__(self, other: Any) -> "ComplexScalar":
        other = self._try_coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "ComplexScalar":
        if not isinstance(exponent, numbers.Integral):
            return NotImplemented
        if exponent < 0:
            return ComplexScalar(1) / self ** (-exponent)
        result, base = ComplexScalar(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __neg__(self) -> "ComplexScalar":
        return ComplexScalar(-self.re, -self.im)

    def __pos__(self) -> "ComplexScalar":
        return self

    def __eq__(self, other: Any) -> bool:
        other = self._try_coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im


ZERO = ComplexScalar(0)
ONE = ComplexScalar(1)


def is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def as_coords(values: Iterable[Any] | np.ndarray, exact: bool | None = None) -> np.ndarray:
    """
    Build an immutable coordinate array.

    :param values: scalars (nested for matrices) or an existing array
    :param exact: force the arithmetic mode; by default exact iff the input already holds exact scalars
    :return: complex128 array (approximate mode) or object array of ComplexScalar (exact mode)
    """

    arr = np.array(values, dtype=object if not isinstance(values, np.ndarray) else values.dtype)
    if exact is None:
        exact = arr.dtype == object and arr.size > 0 and any(
            isinstance(v, (ComplexScalar, Fraction)) for v in arr.flat
        )
    if exact:
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = ComplexScalar.coerce(v)
    else:
        out = np.empty(arr.shape, dtype=np.complex128)
        for idx, v in np.ndenumerate(arr):
            out[idx] = complex(v)
    out.flags.writeable = False
    return out


def zeros(shape: int | tuple[int, ...], exact: bool) -> np.ndarray:
    if exact:
        return np.full(shape, ZERO, dtype=object)
    return np.zeros(shape, dtype=np.complex128)


def coerce_scalar(value: Any, exact: bool) -> Any:
    if exact:
        return ComplexScalar.coerce(value)
    return complex(value)


def abs2(value: Any) -> Any:
    if isinstance(value, ComplexScalar):
        return value.abs2()
    value = complex(value)
    return value.real * value.real + value.imag * value.imag


def abs2_array(arr: np.ndarray) -> np.ndarray:
    if is_exact(arr):
        return np.array([v.abs2() for v in arr.flat], dtype=object).reshape(arr.shape)
    return np.abs(arr) ** 2


def magnitude(value: Any) -> float:
    return math.sqrt(float(abs2(value)))


def max_magnitude(arr: np.ndarray) -> float:
    if arr.size == 0:
        return 0.0
    return math.sqrt(float(max(abs2_array(arr).flat)))


def sum_magnitude(arr: np.ndarray) -> float:
    if is_exact(arr):
        return float(sum(abs(v) for v in arr.flat))
    return float(np.abs(arr).sum())


def nonzero_mask(arr: np.ndarray, tol: float = 0.0) -> np.ndarray:
    if is_exact(arr):
        return np.array([bool(v) for v in arr.flat], dtype=bool).reshape(arr.shape)
    return np.abs(arr) > tol


def is_zero(value: Any, tol: float = 0.0) -> bool:
    if isinstance(value, ComplexScalar):
        return not value
    return abs(complex(value)) <= tol


def to_approximate(arr: np.ndarray) -> np.ndarray:
    return arr.astype(np.complex128) if is_exact(arr) else arr


def random_scalars(rng: np.random.Generator, size: int | tuple[int, ...], *, exact: bool,
                   scale: float = 1.0) -> np.ndarray:
    """
    Draw complex scalars from the disk of radius ``scale``.

    Exact mode draws dyadic rationals with small denominators so that exact sweeps stay cheap.
    """

    shape = (size,) if isinstance(size, int) else size
    radius = scale * np.sqrt(rng.uniform(0, 1, shape))
    angle = rng.uniform(0, 2 * np.pi, shape)
    values = radius * np.exp(1j * angle)
    if not exact:
        return values.astype(np.complex128)
    out = np.empty(shape, dtype=object)
    for idx, v in np.ndenumerate(values):
        out[idx] = ComplexScalar(
            Fraction(int(round(v.real * 64)), 64),
            Fraction(int(round(v.imag * 64)), 64),
        )
    return out


def scalar_to_json(value: Any) -> dict[str, Any]:
    if isinstance(value, ComplexScalar):
        return {'re': str(value.re), 'im': str(value.im)}
    value = complex(value)
    return {'re': value.real, 'im': value.imag}


def scalar_from_json(data: Any, exact: bool) -> Any:
    """
    Parse ``{"re": ..., "im": ...}`` (components may be numbers or ``"p/q"`` strings) or a bare real.
    """

    if isinstance(data, dict):
        unknown = set(data) - {'re', 'im'}
        if unknown:
            raise ValueError(f"unexpected scalar keys {sorted(unknown)}")
        value = ComplexScalar(data.get('re', 0), data.get('im', 0))
    elif isinstance(data, (numbers.Real, str)) and not isinstance(data, bool):
        value = ComplexScalar(data, 0)
    else:
        raise ValueError(f"cannot read a scalar from {data!r}")
    return coerce_scalar(value, exact)
