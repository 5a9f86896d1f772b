import attr
import enum
import logging
import math
import numpy as np

from fractions import Fraction
from typing import Any, ClassVar, Sequence

from ..core.anchors import AnchorTuple
from ..core.axioms import NNorm
from ..core.gram import DEFAULT_TOL
from ..core.linalg import is_dependent
from ..core.scalar import coerce_scalar, random_scalars, zeros
from ..core.vector import LinearElement
from ..errors import DimensionMismatchError, NonInvertibleError, NumericalBreakdownError, PreconditionError


DEPENDENCE_TOL = 1e-9

logger = logging.getLogger(__name__)

AlgebraElement = LinearElement


class Kind(enum.Enum):
    TRUNCATED_SERIES = 'truncated_series'
    POINTWISE = 'pointwise'
    OPERATOR = 'operator'
    UNITIZATION = 'unitization'


class NormVariant(enum.Enum):
    EQ21_MAX_PRODUCT = 'eq21_max_product'
    L1_CORRECTED = 'l1_corrected'
    SUP_COORDINATE = 'sup_coordinate'
    GRAM_INDUCED = 'gram_induced'
    UNITIZATION_SUM = 'unitization_sum'


def evaluate_coeffs(coeffs: np.ndarray, x: LinearElement) -> Any:
    """Coefficient-weighted sum of the flattened coordinates of ``x``."""

    return (coeffs * np.ravel(x.coords)).sum()


def vanishes_on(coeffs: np.ndarray, anchors: AnchorTuple, tol: float = DEFAULT_TOL) -> bool:
    for anchor in anchors:
        value = evaluate_coeffs(coeffs, anchor)
        if isinstance(value, complex) or isinstance(value, np.complexfloating):
            scale = float(np.abs(coeffs).sum() * np.abs(np.ravel(anchor.coords)).max())
            if abs(value) > tol * max(1.0, scale):
                return False
        elif value:
            return False
    return True


def check_anchors(instance: 'AlgebraInstance', attribute: Any, anchors: AnchorTuple) -> None:
    """
    attrs validator shared by every instance: anchors have the element shape, are linearly
    independent and, unless the variant is Gram-induced, have instance magnitude 1.
    """

    for anchor in anchors:
        instance.check_anchor(anchor)
    if is_dependent([a.coords for a in anchors], DEPENDENCE_TOL):
        raise PreconditionError("anchors are linearly dependent (axiom N1 forces a zero norm)", witness=list(anchors))
    if instance.norm_variant is NormVariant.GRAM_INDUCED:
        return
    for anchor in anchors:
        size = instance.magnitude(anchor)
        if abs(size - 1) > max(instance.tol, 1e-12):
            raise PreconditionError(f"anchor magnitude {size:.6g} != 1; normalize the anchors", witness=anchor)


@attr.s(slots=True, frozen=True, kw_only=True)
class AlgebraInstance:
    """
    A concrete finite-dimensional n-normed algebra together with its anchors a_2, ..., a_n.

    Subclasses declare the ``anchors`` and ``norm_variant`` fields and implement the
    element-level hooks below; everything generic (norm against anchors, sampling, powers)
    lives here.
    """

    exact: bool = attr.ib(default=False)
    tol: float = attr.ib(default=DEFAULT_TOL)

    kind: ClassVar[Kind]
    commutative: ClassVar[bool]
    element_type: ClassVar[type]

    # element-level hooks

    @property
    def shape(self) -> tuple[int, ...]:
        raise NotImplementedError()

    def from_coords(self, coords: np.ndarray) -> LinearElement:
        raise NotImplementedError()

    def unit(self) -> LinearElement:
        raise NotImplementedError()

    def basis(self) -> list[LinearElement]:
        raise NotImplementedError()

    def _mul(self, u: LinearElement, v: LinearElement) -> LinearElement:
        raise NotImplementedError()

    def tuple_norm(self, elements: Sequence[LinearElement]) -> float:
        raise NotImplementedError()

    def magnitude(self, x: LinearElement) -> float:
        raise NotImplementedError()

    def carrier_norm(self, x: LinearElement) -> float:
        raise NotImplementedError()

    def invert(self, x: LinearElement) -> LinearElement:
        raise NotImplementedError()

    def tdz_candidate(self, z: LinearElement, k: int, *, right: bool = False) -> LinearElement | None:
        raise NotImplementedError()

    def describe(self) -> dict[str, Any]:
        raise NotImplementedError()

    def adversarial_pairs(self) -> list[tuple[str, LinearElement, LinearElement]]:
        raise NotImplementedError()

    def dual_norm(self, coeffs: np.ndarray, anchors: AnchorTuple) -> float | None:
        raise NotImplementedError()

    def characters(self) -> list[np.ndarray]:
        return []

    def functional_anchors(self, coeffs: np.ndarray) -> AnchorTuple:
        return self.anchors

    # generic behaviour

    @property
    def n(self) -> int:
        return self.anchors.n

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def check_anchor(self, anchor: LinearElement) -> None:
        self.check_element(anchor)

    def check_element(self, x: LinearElement) -> None:
        if not isinstance(x, self.element_type) or x.coords.shape != self.shape:
            raise DimensionMismatchError(
                f"{type(x).__name__}{x.coords.shape} is not an element of {type(self).__name__}{self.shape}"
            )

    def scalar(self, value: Any) -> Any:
        return coerce_scalar(value, self.exact)

    def zero(self) -> LinearElement:
        return self.from_coords(zeros(self.shape, self.exact))

    def mul(self, u: LinearElement, v: LinearElement) -> LinearElement:
        self.check_element(u)
        self.check_element(v)
        return self._mul(u, v)

    def power(self, x: LinearElement, k: int) -> LinearElement:
        result = self.unit()
        for _ in range(k):
            result = self._mul(result, x)
        return result

    def norm(self, x: LinearElement, anchors: AnchorTuple | None = None) -> float:
        """||x, a_2, ..., a_n|| against the instance anchors (or the given ones)."""

        return self.tuple_norm([x, *(anchors if anchors is not None else self.anchors)])

    def distance(self, x: LinearElement, y: LinearElement, anchors: AnchorTuple | None = None) -> float:
        return self.norm(x - y, anchors)

    def dependent(self, elements: Sequence[LinearElement]) -> bool:
        return is_dependent([e.coords for e in elements], DEPENDENCE_TOL)

    def is_invertible(self, x: LinearElement) -> bool:
        try:
            self.invert(x)
        except NonInvertibleError:
            return False
        return True

    def normalized(self, x: LinearElement, anchors: AnchorTuple | None = None) -> LinearElement | None:
        size = self.norm(x, anchors)
        if size == 0 or not math.isfinite(size):
            return None
        return x / self.scalar(size)

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> LinearElement:
        return self.from_coords(random_scalars(rng, self.shape, exact=self.exact, scale=scale))

    def random_invertible(self, rng: np.random.Generator, scale: float = 0.5) -> LinearElement:
        """A multiple s e of the unit, 1 <= |s| <= 2, plus a random element of size ``scale``."""

        for _ in range(100):
            shift = random_scalars(rng, 1, exact=self.exact, scale=0.5)[0] + self.scalar(Fraction(3, 2))
            x = self.unit() * shift + self.random_element(rng, scale)
            if self.is_invertible(x):
                return x
        raise NumericalBreakdownError("could not draw an invertible element")

    def random_singular(self, rng: np.random.Generator) -> LinearElement:
        raise NotImplementedError()

    def _shrink(self, x: LinearElement, factor: float) -> LinearElement:
        if self.exact:
            # round down so the scaled norm stays strictly inside the ball
            return x * Fraction(math.floor(factor * 2 ** 20), 2 ** 20)
        return x * factor

    def sample(self, rng: np.random.Generator, radius: float = 1.0,
               anchors: AnchorTuple | None = None) -> LinearElement:
        """
        Draw an element with ||x, A|| < radius (uniform in the radial direction).
        """

        for _ in range(100):
            x = self.random_element(rng)
            size = self.norm(x, anchors)
            if 0 < size < math.inf:
                return self._shrink(x, radius * rng.uniform(0, 1) / size)
        raise NumericalBreakdownError("every sampled element had zero or infinite norm")

    def sample_perturbation(self, rng: np.random.Generator, radius: float) -> LinearElement:
        return self.sample(rng, radius)

    def as_nnorm(self) -> NNorm:
        return InstanceNorm(n=self.n, exact=self.exact, tol=self.tol, instance=self)


@attr.s(slots=True, frozen=True, kw_only=True)
class InstanceNorm(NNorm):
    """The n-norm of an algebra instance as an NNorm handle for the axiom checker."""

    instance: AlgebraInstance = attr.ib()

    @property
    def name(self) -> str:
        return f"{type(self.instance).__name__}[{self.instance.norm_variant.value}]"

    def __call__(self, elements: Sequence[LinearElement]) -> float:
        return self.instance.tuple_norm(elements)

    def sample(self, rng: np.random.Generator) -> LinearElement:
        return self.instance.random_element(rng, scale=2.0)
