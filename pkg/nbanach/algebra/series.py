import attr
import logging
import numpy as np
import warnings

from typing import Any, ClassVar, Iterable, Sequence

from ..core.anchors import AnchorTuple
from ..core.linalg import is_dependent
from ..core.scalar import (
    ONE,
    as_coords,
    coerce_scalar,
    is_exact,
    is_zero,
    max_magnitude,
    scalar_to_json,
    sum_magnitude,
    zeros,
)
from ..core.vector import LinearElement
from ..errors import DimensionMismatchError, NonInvertibleError, TruncationWarning
from .base import DEPENDENCE_TOL, AlgebraInstance, Kind, NormVariant, check_anchors, vanishes_on


DEFAULT_DEGREE = 32

logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, eq=False, repr=False)
class TruncatedSeries(LinearElement):
    """Power series c_0 + c_1 t + ... + c_D t^D; coefficient of t^j at index j."""

    _coords: np.ndarray = attr.ib(converter=as_coords)
    truncated: bool = attr.ib(default=False, kw_only=True)

    @_coords.validator
    def _(self, attribute, value) -> None:
        if value.ndim != 1 or value.size == 0:
            raise DimensionMismatchError("a series needs a non-empty flat coefficient list")

    @classmethod
    def from_iterable(cls, values: Iterable[Any], *, degree: int | None = None,
                      exact: bool | None = None) -> "TruncatedSeries":
        values = list(values)
        degree = len(values) - 1 if degree is None else degree
        if len(values) > degree + 1:
            raise DimensionMismatchError(f"{len(values)} coefficients exceed degree {degree}")
        coeffs = as_coords(values, exact=exact)
        padded = zeros(degree + 1, is_exact(coeffs))
        padded[:coeffs.size] = coeffs
        return cls(padded)

    @classmethod
    def monomial(cls, j: int, degree: int, *, exact: bool = False) -> "TruncatedSeries":
        coeffs = zeros(degree + 1, exact)
        coeffs[j] = coerce_scalar(1, exact)
        return cls(coeffs)

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    def _from_coords(self, coords: np.ndarray) -> "TruncatedSeries":
        return TruncatedSeries(coords)

    @property
    def degree(self) -> int:
        return self._coords.size - 1

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self._coords):
            if not c:
                continue
            value = str(c) if self.exact else f'{complex(c):.3g}'
            terms.append(value if j == 0 else f'{value}*t^{j}')
        return f"TruncatedSeries({' + '.join(terms) or '0'}; D={self.degree})"

    def to_dict(self) -> dict[str, Any]:
        return {'coeffs': [scalar_to_json(c) for c in self._coords]}


def convolve(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
    """
    Cauchy product c_k = a_0 b_k + a_1 b_{k-1} + ... + a_k b_0, cut at the common degree.

    :return: truncated coefficients and whether a nonzero coefficient was discarded
    """

    size = a.size
    if is_exact(a):
        full = zeros(2 * size - 1, True)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    full[i + j] = full[i + j] + ai * bj
    else:
        full = np.convolve(a, b)
    return full[:size], bool(any(bool(c) for c in full[size:]))


def _dependent(x1: TruncatedSeries, anchors: AnchorTuple, tol: float) -> bool:
    return is_dependent([x1.coords, *(a.coords for a in anchors)], tol)


def eq21_n_norm(x1: TruncatedSeries, anchors: AnchorTuple, *, tol: float = DEPENDENCE_TOL) -> float:
    """
    Max-product n-norm: prod over the tuple of max_j |c_j| when independent, 0 otherwise.

    Not submultiplicative under convolution: ||(1+t)^2, t^2|| = 2 > 1 = ||1+t, t^2||^2.
    """

    if _dependent(x1, anchors, tol):
        return 0.0
    value = max_magnitude(x1.coords)
    for anchor in anchors:
        value *= max_magnitude(anchor.coords)
    return value


def l1_n_norm(x1: TruncatedSeries, anchors: AnchorTuple, *, tol: float = DEPENDENCE_TOL) -> float:
    """Product of coefficient l1 norms over an independent tuple, 0 otherwise."""

    if _dependent(x1, anchors, tol):
        return 0.0
    value = sum_magnitude(x1.coords)
    for anchor in anchors:
        value *= sum_magnitude(anchor.coords)
    return value


def monomial_anchors(n: int, degree: int, exact: bool) -> AnchorTuple:
    if degree < n:
        raise DimensionMismatchError(f"anchors t^2, ..., t^{n} need degree >= {n}, got {degree}")
    return AnchorTuple(anchors=[TruncatedSeries.monomial(j, degree, exact=exact) for j in range(2, n + 1)],
                       normalized=True)


@attr.s(slots=True, frozen=True, kw_only=True)
class SeriesAlgebra(AlgebraInstance):
    """Polynomials of degree <= D under the convolution product, cut at degree D."""

    kind: ClassVar[Kind] = Kind.TRUNCATED_SERIES
    commutative: ClassVar[bool] = True
    element_type: ClassVar[type] = TruncatedSeries

    degree: int = attr.ib(default=DEFAULT_DEGREE)
    norm_variant: NormVariant = attr.ib(
        default=NormVariant.EQ21_MAX_PRODUCT,
        validator=attr.validators.in_([NormVariant.EQ21_MAX_PRODUCT, NormVariant.L1_CORRECTED]),
    )
    anchors: AnchorTuple = attr.ib(validator=check_anchors)

    @anchors.default
    def _(self) -> AnchorTuple:
        return monomial_anchors(2, self.degree, self.exact)

    @classmethod
    def create(cls, *, n: int = 2, degree: int = DEFAULT_DEGREE, exact: bool = False, **kwargs) -> "SeriesAlgebra":
        return cls(degree=degree, exact=exact, anchors=monomial_anchors(n, degree, exact), **kwargs)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.degree + 1,)

    def from_coords(self, coords: np.ndarray) -> TruncatedSeries:
        return TruncatedSeries(as_coords(coords, exact=self.exact))

    def series(self, *coeffs: Any) -> TruncatedSeries:
        return TruncatedSeries.from_iterable(coeffs, degree=self.degree, exact=self.exact)

    def unit(self) -> TruncatedSeries:
        return TruncatedSeries.monomial(0, self.degree, exact=self.exact)

    def basis(self) -> list[TruncatedSeries]:
        return [TruncatedSeries.monomial(j, self.degree, exact=self.exact) for j in range(self.degree + 1)]

    def _mul(self, u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
        coeffs, truncated = convolve(u.coords, v.coords)
        if truncated:
            warnings.warn(TruncationWarning(f"product exceeded degree {self.degree}"), stacklevel=3)
        return TruncatedSeries(coeffs, truncated=truncated)

    def tuple_norm(self, elements: Sequence[LinearElement]) -> float:
        x1, rest = elements[0], AnchorTuple(anchors=elements[1:])
        if self.norm_variant is NormVariant.L1_CORRECTED:
            return l1_n_norm(x1, rest)
        return eq21_n_norm(x1, rest)

    def magnitude(self, x: LinearElement) -> float:
        if self.norm_variant is NormVariant.L1_CORRECTED:
            return sum_magnitude(x.coords)
        return max_magnitude(x.coords)

    def carrier_norm(self, x: LinearElement) -> float:
        return sum_magnitude(x.coords)

    def invert(self, x: TruncatedSeries) -> TruncatedSeries:
        """
        Inverse by the coefficient recursion b_0 = 1/a_0, b_k = -(a_1 b_{k-1} + ... + a_k b_0)/a_0.

        :raises NonInvertibleError: the constant term vanishes
        """

        self.check_element(x)
        a = x.coords
        if is_zero(a[0], self.tol):
            raise NonInvertibleError("constant term vanishes", witness={'constant_term': a[0]})
        inv_a0 = ONE / a[0] if self.exact else 1 / a[0]
        b = zeros(a.size, self.exact)
        b[0] = inv_a0
        for k in range(1, a.size):
            acc = a[1] * b[k - 1]
            for j in range(2, k + 1):
                acc = acc + a[j] * b[k - j]
            b[k] = -acc * inv_a0
        return TruncatedSeries(b)

    def random_singular(self, rng: np.random.Generator) -> TruncatedSeries:
        coeffs = np.array(self.random_element(rng).coords)
        coeffs[0] = self.scalar(0)
        return TruncatedSeries(coeffs)

    def tdz_candidate(self, z: TruncatedSeries, k: int, *, right: bool = False) -> TruncatedSeries:
        # z * t^D = z_0 t^D, so t^D is annihilated exactly when z_0 = 0
        candidate = TruncatedSeries.monomial(self.degree, self.degree, exact=self.exact)
        if self.dependent([candidate, *self.anchors]):
            candidate = candidate + self.unit() * self.scalar(2.0 ** -k)
        return candidate

    def describe(self) -> dict[str, Any]:
        return {
            'kind': self.kind.value,
            'norm_variant': self.norm_variant.value,
            'degree': self.degree,
            'anchors': [a.to_dict()['coeffs'] for a in self.anchors],
        }

    def adversarial_pairs(self) -> list[tuple[str, LinearElement, LinearElement]]:
        one_plus_t = self.series(1, 1)
        alternating = self.series(*[(-1) ** j for j in range(min(4, self.degree + 1))])
        geometric = self.series(*[1] * min(4, self.degree + 1))
        near = self.anchors[0] + self.unit() * self.scalar(2.0 ** -20)
        t = TruncatedSeries.monomial(1, self.degree, exact=self.exact)
        return [
            ('one-plus-t-squared', one_plus_t, one_plus_t),
            ('alternating-signs', alternating, geometric),
            ('near-dependent', near, one_plus_t),
            ('anchor-times-t', self.anchors[0], t),
        ]

    def dual_norm(self, coeffs: np.ndarray, anchors: AnchorTuple) -> float | None:
        if not vanishes_on(coeffs, anchors, self.tol):
            return None
        if self.norm_variant is NormVariant.L1_CORRECTED:
            return max_magnitude(coeffs)
        return sum_magnitude(coeffs)

    def characters(self) -> list[np.ndarray]:
        # evaluation at t = 0
        return [TruncatedSeries.monomial(0, self.degree, exact=self.exact).coords]
