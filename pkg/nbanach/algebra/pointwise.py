import attr
import itertools
import numpy as np

from typing import Any, ClassVar, Iterable, Sequence

from ..core.anchors import AnchorTuple
from ..core.linalg import is_dependent
from ..core.scalar import (
    as_coords,
    coerce_scalar,
    is_zero,
    max_magnitude,
    nonzero_mask,
    scalar_to_json,
    sum_magnitude,
    to_approximate,
    zeros,
)
from ..core.vector import LinearElement
from ..errors import DimensionMismatchError, NonInvertibleError
from .base import DEPENDENCE_TOL, AlgebraInstance, Kind, NormVariant, check_anchors, vanishes_on


@attr.s(slots=True, frozen=True, eq=False, repr=False)
class PointwiseElement(LinearElement):
    """A point of C^m multiplied coordinate by coordinate."""

    _coords: np.ndarray = attr.ib(converter=as_coords)

    @_coords.validator
    def _(self, attribute, value) -> None:
        if value.ndim != 1 or value.size == 0:
            raise DimensionMismatchError("a pointwise element needs a non-empty flat coordinate list")

    @classmethod
    def from_iterable(cls, values: Iterable[Any], *, exact: bool | None = None) -> "PointwiseElement":
        return cls(as_coords(list(values), exact=exact))

    @classmethod
    def indicator(cls, m: int, idx: int, *, exact: bool = False) -> "PointwiseElement":
        coords = zeros(m, exact)
        coords[idx] = coerce_scalar(1, exact)
        return cls(coords)

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    def _from_coords(self, coords: np.ndarray) -> "PointwiseElement":
        return PointwiseElement(coords)

    @property
    def m(self) -> int:
        return self._coords.size

    def __repr__(self) -> str:
        if self.exact:
            return f"PointwiseElement({', '.join(str(v) for v in self._coords)})"
        return f"PointwiseElement({', '.join(f'{complex(v):.3g}' for v in self._coords)})"

    def __getitem__(self, idx: int) -> Any:
        return self._coords[idx]

    def to_dict(self) -> dict[str, Any]:
        return {'coords': [scalar_to_json(v) for v in self._coords]}


def sup_n_norm(x1: PointwiseElement, anchors: AnchorTuple, *, tol: float = DEPENDENCE_TOL) -> float:
    """
    Product of max-abs coordinates over an independent tuple, 0 otherwise.

    With normalized anchors this is the sup-coordinate norm of x1 off the anchor span.
    """

    if is_dependent([x1.coords, *(a.coords for a in anchors)], tol):
        return 0.0
    value = max_magnitude(x1.coords)
    for anchor in anchors:
        value *= max_magnitude(anchor.coords)
    return value


def indicator_anchors(n: int, m: int, exact: bool) -> AnchorTuple:
    """Indicators e_2, ..., e_n."""

    if m < n:
        raise DimensionMismatchError(f"an {n}-norm on C^{m} needs m >= n")
    return AnchorTuple(anchors=[PointwiseElement.indicator(m, i, exact=exact) for i in range(1, n)],
                       normalized=True)


@attr.s(slots=True, frozen=True, kw_only=True)
class PointwiseAlgebra(AlgebraInstance):
    """C^m with coordinatewise product; its characters are exactly the coordinate projections."""

    kind: ClassVar[Kind] = Kind.POINTWISE
    commutative: ClassVar[bool] = True
    element_type: ClassVar[type] = PointwiseElement

    m: int = attr.ib(default=3)
    norm_variant: NormVariant = attr.ib(
        default=NormVariant.SUP_COORDINATE,
        validator=attr.validators.in_([NormVariant.SUP_COORDINATE]),
    )
    anchors: AnchorTuple = attr.ib(validator=check_anchors)

    @anchors.default
    def _(self) -> AnchorTuple:
        return indicator_anchors(2, self.m, self.exact)

    @classmethod
    def create(cls, *, n: int = 2, m: int = 3, exact: bool = False, **kwargs) -> "PointwiseAlgebra":
        return cls(m=m, exact=exact, anchors=indicator_anchors(n, m, exact), **kwargs)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.m,)

    def from_coords(self, coords: np.ndarray) -> PointwiseElement:
        return PointwiseElement(as_coords(coords, exact=self.exact))

    def element(self, *coords: Any) -> PointwiseElement:
        return PointwiseElement.from_iterable(coords, exact=self.exact)

    def unit(self) -> PointwiseElement:
        return self.element(*[1] * self.m)

    def basis(self) -> list[PointwiseElement]:
        return [PointwiseElement.indicator(self.m, i, exact=self.exact) for i in range(self.m)]

    def _mul(self, u: PointwiseElement, v: PointwiseElement) -> PointwiseElement:
        return PointwiseElement(u.coords * v.coords)

    def tuple_norm(self, elements: Sequence[LinearElement]) -> float:
        return sup_n_norm(elements[0], AnchorTuple(anchors=elements[1:]))

    def magnitude(self, x: LinearElement) -> float:
        return max_magnitude(x.coords)

    def carrier_norm(self, x: LinearElement) -> float:
        return max_magnitude(x.coords)

    def invert(self, x: PointwiseElement) -> PointwiseElement:
        """
        Coordinatewise reciprocal.

        :raises NonInvertibleError: some coordinate vanishes (witness: its index)
        """

        self.check_element(x)
        zero = [i for i, v in enumerate(x.coords) if is_zero(v, self.tol)]
        if zero:
            raise NonInvertibleError(f"coordinate {zero[0]} vanishes", witness={'zero_coordinates': zero})
        return PointwiseElement(coerce_scalar(1, self.exact) / x.coords)

    def random_singular(self, rng: np.random.Generator) -> PointwiseElement:
        coords = np.array(self.random_element(rng).coords)
        coords[rng.integers(self.m)] = self.scalar(0)
        return PointwiseElement(coords)

    def tdz_candidate(self, z: PointwiseElement, k: int, *, right: bool = False) -> PointwiseElement:
        # the indicator of the smallest coordinate; z * e_i = z_i e_i
        idx = int(np.argmin(np.abs(to_approximate(z.coords))))
        candidate = PointwiseElement.indicator(self.m, idx, exact=self.exact)
        if self.dependent([candidate, *self.anchors]):
            candidate = candidate + self.unit() * self.scalar(2.0 ** -k)
        return candidate

    def describe(self) -> dict[str, Any]:
        return {
            'kind': self.kind.value,
            'norm_variant': self.norm_variant.value,
            'm': self.m,
            'anchors': [a.to_dict()['coords'] for a in self.anchors],
        }

    def adversarial_pairs(self) -> list[tuple[str, LinearElement, LinearElement]]:
        alternating = self.element(*[(-1) ** i for i in range(self.m)])
        near = self.anchors[0] + self.basis()[0] * self.scalar(2.0 ** -20)
        return [
            ('unit-squared', self.unit(), self.unit()),
            ('alternating-signs', alternating, alternating),
            ('near-dependent', near, near),
            ('anchor-times-unit', self.anchors[0], self.unit()),
        ]

    def dual_norm(self, coeffs: np.ndarray, anchors: AnchorTuple) -> float | None:
        if not vanishes_on(coeffs, anchors, self.tol):
            return None
        return sum_magnitude(coeffs)

    def characters(self) -> list[np.ndarray]:
        return [e.coords for e in self.basis()]

    def functional_anchors(self, coeffs: np.ndarray) -> AnchorTuple:
        """
        Anchors a functional vanishes on: indicators outside its support, topped up with
        kernel vectors c_j e_i - c_i e_j when the support is too large.
        """

        support = [i for i, flag in enumerate(nonzero_mask(coeffs, self.tol)) if flag]
        outside = [i for i in range(self.m) if i not in support]
        anchors = [PointwiseElement.indicator(self.m, i, exact=self.exact) for i in outside[:self.n - 1]]
        for i, j in itertools.combinations(support, 2):
            if len(anchors) == self.n - 1:
                break
            v = zeros(self.m, self.exact)
            v[i], v[j] = coeffs[j], -coeffs[i]
            candidate = PointwiseElement(v)
            candidate = candidate / self.scalar(max_magnitude(v))
            if not self.dependent(anchors + [candidate]):
                anchors.append(candidate)
        if len(anchors) < self.n - 1:
            return self.anchors
        return AnchorTuple(anchors=anchors, normalized=True)

