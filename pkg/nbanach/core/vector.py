import attr
import math
import numpy as np

from typing import Any, Iterable, TypeVar

from ..errors import DimensionMismatchError
from .scalar import (
    as_coords,
    coerce_scalar,
    is_exact,
    scalar_to_json,
    to_approximate,
    zeros,
)


E = TypeVar('E', bound='LinearElement')


class LinearElement:
    """
    Linear structure over a flat coordinate array.

    Subclasses provide ``coords`` and ``_from_coords``; sums, differences and scalar
    multiples then come for free and keep the subclass type.
    """

    __slots__ = ()

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    @property
    def coords(self) -> np.ndarray:
        raise NotImplementedError()

    def _from_coords(self: E, coords: np.ndarray) -> E:
        raise NotImplementedError()

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError()

    @property
    def exact(self) -> bool:
        return is_exact(self.coords)

    @property
    def size(self) -> int:
        return self.coords.size

    def _check_compatible(self, other: "LinearElement") -> None:
        if type(self) is not type(other) or self.coords.shape != other.coords.shape:
            raise DimensionMismatchError(
                f"incompatible operands {type(self).__name__}{self.coords.shape} "
                f"and {type(other).__name__}{other.coords.shape}"
            )

    def __add__(self: E, other: E) -> E:
        self._check_compatible(other)
        return self._from_coords(self.coords + other.coords)

    def __sub__(self: E, other: E) -> E:
        self._check_compatible(other)
        return self._from_coords(self.coords - other.coords)

    def __neg__(self: E) -> E:
        return self._from_coords(-self.coords)

    def __mul__(self: E, other: Any) -> E:
        if isinstance(other, LinearElement):
            return NotImplemented
        return self._from_coords(self.coords * coerce_scalar(other, self.exact))

    def __rmul__(self: E, other: Any) -> E:
        return self.__mul__(other)

    def __truediv__(self: E, other: Any) -> E:
        return self._from_coords(self.coords * (1 / coerce_scalar(other, self.exact)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearElement):
            return NotImplemented
        if type(self) is not type(other) or self.coords.shape != other.coords.shape:
            return False
        if self.exact and other.exact:
            return all(a == b for a, b in zip(self.coords.flat, other.coords.flat))
        return np.allclose(to_approximate(self.coords), to_approximate(other.coords))

    __hash__ = None  # type: ignore

    def to_approximate(self: E) -> E:
        return self._from_coords(to_approximate(self.coords))

    def is_zero(self) -> bool:
        return not any(bool(v) for v in self.coords.flat)


@attr.s(slots=True, frozen=True, eq=False, repr=False)
class Vector(LinearElement):
    """A point of C^d with the Euclidean-Hermitian inner product."""

    _coords: np.ndarray = attr.ib(converter=as_coords)

    @_coords.validator
    def _(self, attribute, value) -> None:
        if value.ndim != 1 or value.size == 0:
            raise DimensionMismatchError("a vector needs a non-empty flat coordinate list")

    @classmethod
    def from_iterable(cls, values: Iterable[Any], *, exact: bool | None = None) -> "Vector":
        return cls(as_coords(list(values), exact=exact))

    @classmethod
    def basis(cls, dim: int, idx: int, *, exact: bool = False) -> "Vector":
        coords = zeros(dim, exact)
        coords[idx] = coerce_scalar(1, exact)
        return cls(coords)

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    def _from_coords(self, coords: np.ndarray) -> "Vector":
        return Vector(coords)

    @property
    def dim(self) -> int:
        return self._coords.size

    def __repr__(self) -> str:
        if self.exact:
            return f"Vector({', '.join(str(v) for v in self._coords)})"
        return f"Vector({', '.join(f'{complex(v):.2f}' for v in self._coords)})"

    def __getitem__(self, idx: int) -> Any:
        return self._coords[idx]

    def inner(self, other: "Vector") -> Any:
        """
        Hermitian inner product, linear in the first slot.

        :param other: right-hand side operand
        :return: sum of self[k] * conj(other[k])
        """

        if self.dim != other.dim:
            raise DimensionMismatchError(f"inner product of dims {self.dim} and {other.dim}")
        return (self._coords * np.conj(other.coords)).sum()

    @property
    def length(self) -> float:
        return math.sqrt(float(self.inner(self).real))

    def normalize(self) -> "Vector":
        return self / self.length

    def hadamard(self, other: "Vector") -> "Vector":
        self._check_compatible(other)
        return Vector(self._coords * other.coords)

    def to_tuple(self) -> tuple:
        return tuple(self._coords)

    def to_dict(self) -> dict[str, Any]:
        return {'coords': [scalar_to_json(v) for v in self._coords]}


def coordinates_equal(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if is_exact(a) and is_exact(b):
        return all(x == y for x, y in zip(a.flat, b.flat))
    return bool(np.allclose(to_approximate(a), to_approximate(b), rtol=0, atol=tol))
