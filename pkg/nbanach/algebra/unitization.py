"""Adjunction of an identity: pairs (x, a) over a base algebra.

The product is (x, a)(y, b) = (xy + ay + bx, ab) with unit (theta, 1). The n-norm of a tuple
of pairs adds the base n-norm of the vector parts to the absolute product of the scalar
parts, and vanishes on dependent tuples.
"""

import attr
import logging
import numpy as np

from typing import Any, ClassVar, Sequence

from ..core.anchors import AnchorTuple
from ..core.linalg import is_dependent
from ..core.scalar import coerce_scalar, is_zero, magnitude, scalar_to_json, zeros
from ..core.vector import LinearElement
from ..errors import DimensionMismatchError, NonInvertibleError, PreconditionError
from .base import DEPENDENCE_TOL, AlgebraInstance, Kind, NormVariant, check_anchors, vanishes_on


logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, eq=False, repr=False)
class UnitizationElement(LinearElement):
    """
    Pair (x, a) of a base element and a scalar. Coordinates are the flattened base
    coordinates followed by ``a``.
    """

    x: LinearElement = attr.ib(validator=attr.validators.instance_of(LinearElement))
    a: Any = attr.ib()

    @a.validator
    def _(self, attribute, value) -> None:
        if isinstance(value, (LinearElement, np.ndarray)):
            raise DimensionMismatchError("the scalar part of a pair must be a scalar")

    @classmethod
    def of(cls, x: LinearElement, a: Any) -> "UnitizationElement":
        return cls(x, coerce_scalar(a, x.exact))

    @property
    def coords(self) -> np.ndarray:
        out = zeros(self.x.size + 1, self.x.exact)
        out[:-1] = np.ravel(self.x.coords)
        out[-1] = coerce_scalar(self.a, self.x.exact)
        out.flags.writeable = False
        return out

    def _from_coords(self, coords: np.ndarray) -> "UnitizationElement":
        base = self.x._from_coords(np.array(coords[:-1]).reshape(self.x.coords.shape))
        return UnitizationElement.of(base, coords[-1])

    def __repr__(self) -> str:
        a = str(self.a) if self.x.exact else f'{complex(self.a):.3g}'
        return f"UnitizationElement({self.x!r}, {a})"

    def to_dict(self) -> dict[str, Any]:
        return {'x': self.x.to_dict(), 'a': scalar_to_json(self.a)}


def unitize_mul(p: UnitizationElement, q: UnitizationElement, base: AlgebraInstance) -> UnitizationElement:
    """(x, a)(y, b) = (xy + ay + bx, ab)."""

    return UnitizationElement.of(base.mul(p.x, q.x) + q.x * p.a + p.x * q.a, p.a * q.a)


def unitization_n_norm(
    p1: UnitizationElement,
    anchors: AnchorTuple,
    base: AlgebraInstance,
    *,
    tol: float = DEPENDENCE_TOL,
) -> float:
    """
    ||x_1, ..., x_n|| + |c_1 ... c_n| for an independent tuple of pairs, 0 otherwise.

    The base n-norm may vanish on pairs that are independent only through their scalar
    parts: (a_2, 0) against anchors (a_2, 1) evaluates to 0.
    """

    pairs = [p1, *anchors]
    if is_dependent([p.coords for p in pairs], tol):
        return 0.0
    scalar_part = 1.0
    for p in pairs:
        scalar_part *= magnitude(p.a)
    return base.tuple_norm([p.x for p in pairs]) + scalar_part


def lifted_anchors(base: AlgebraInstance) -> AnchorTuple:
    """(a_i, 1) over the base anchors; the unit (theta, 1) then has norm 1."""

    return AnchorTuple(anchors=[UnitizationElement.of(a, 1) for a in base.anchors], normalized=True)


@attr.s(slots=True, frozen=True, kw_only=True)
class UnitizationAlgebra(AlgebraInstance):
    kind: ClassVar[Kind] = Kind.UNITIZATION
    element_type: ClassVar[type] = UnitizationElement

    base: AlgebraInstance = attr.ib()
    norm_variant: NormVariant = attr.ib(
        default=NormVariant.UNITIZATION_SUM,
        validator=attr.validators.in_([NormVariant.UNITIZATION_SUM]),
    )
    anchors: AnchorTuple = attr.ib(validator=check_anchors)

    @base.validator
    def _(self, attribute, value) -> None:
        if value.kind not in (Kind.POINTWISE, Kind.TRUNCATED_SERIES):
            raise PreconditionError(f"cannot unitize a {value.kind.value} instance: its norm is not an n-norm of tuples")
        if value.exact != self.exact:
            raise PreconditionError("the unitization and its base must share the arithmetic mode")

    @anchors.default
    def _(self) -> AnchorTuple:
        return lifted_anchors(self.base)

    @classmethod
    def create(cls, base: AlgebraInstance, **kwargs) -> "UnitizationAlgebra":
        return cls(base=base, exact=base.exact, tol=base.tol, **kwargs)

    @property
    def commutative(self) -> bool:  # type: ignore[override]
        return self.base.commutative

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.base.size + 1,)

    def check_anchor(self, anchor: LinearElement) -> None:
        self.check_element(anchor)

    def check_element(self, x: LinearElement) -> None:
        super(UnitizationAlgebra, self).check_element(x)
        self.base.check_element(x.x)

    def from_coords(self, coords: np.ndarray) -> UnitizationElement:
        coords = np.asarray(coords)
        return UnitizationElement.of(self.base.from_coords(coords[:-1].reshape(self.base.shape)), coords[-1])

    def pair(self, x: LinearElement, a: Any) -> UnitizationElement:
        return UnitizationElement.of(x, coerce_scalar(a, self.exact))

    def unit(self) -> UnitizationElement:
        return self.pair(self.base.zero(), 1)

    def basis(self) -> list[UnitizationElement]:
        return [self.pair(b, 0) for b in self.base.basis()] + [self.unit()]

    def _mul(self, u: UnitizationElement, v: UnitizationElement) -> UnitizationElement:
        return unitize_mul(u, v, self.base)

    def tuple_norm(self, elements: Sequence[LinearElement]) -> float:
        return unitization_n_norm(elements[0], AnchorTuple(anchors=elements[1:]), self.base)

    def magnitude(self, x: LinearElement) -> float:
        return max(self.base.magnitude(x.x), magnitude(x.a))

    def carrier_norm(self, x: LinearElement) -> float:
        return self.base.carrier_norm(x.x) + magnitude(x.a)

    def invert(self, p: UnitizationElement) -> UnitizationElement:
        """
        (x, a) -> x + a e is an isomorphism onto base x C, so (x, a) is invertible iff a != 0
        and x + a e is; the inverse is (w - e/a, 1/a) with w = (x + a e)^-1.

        :raises NonInvertibleError: a = 0, or x + a e is not invertible in the base
        """

        self.check_element(p)
        if is_zero(p.a, self.tol):
            raise NonInvertibleError("scalar part vanishes", witness={'scalar_part': p.a})
        e = self.base.unit()
        try:
            w = self.base.invert(p.x + e * p.a)
        except NonInvertibleError as exc:
            raise NonInvertibleError(f"x + a e is not invertible: {exc}", witness=exc.witness) from exc
        inv_a = coerce_scalar(1, self.exact) / coerce_scalar(p.a, self.exact)
        return self.pair(w - e * inv_a, inv_a)

    def random_singular(self, rng: np.random.Generator) -> UnitizationElement:
        return self.pair(self.base.random_element(rng), 0)

    def tdz_candidate(self, z: UnitizationElement, k: int, *, right: bool = False) -> UnitizationElement | None:
        # (x, 0)(-e, 1) = (theta, 0); otherwise lift a base candidate for x + a e as (w, 0)
        if is_zero(z.a, self.tol):
            return self.pair(-self.base.unit(), 1)
        w = self.base.tdz_candidate(z.x + self.base.unit() * z.a, k, right=right)
        return None if w is None else self.pair(w, 0)

    def describe(self) -> dict[str, Any]:
        return {
            'kind': self.kind.value,
            'norm_variant': self.norm_variant.value,
            'base': self.base.describe(),
            'anchors': [a.to_dict() for a in self.anchors],
        }

    def adversarial_pairs(self) -> list[tuple[str, LinearElement, LinearElement]]:
        b = self.base.basis()
        second = b[1] if len(b) > 1 else b[0]
        name, bx, by = self.base.adversarial_pairs()[0]
        return [
            ('unit-squared', self.unit(), self.unit()),
            ('scalar-parts', self.pair(self.base.zero(), 2), self.pair(self.base.zero(), 3)),
            ('mixed-pairs', self.pair(b[0], 2), self.pair(second, 3)),
            (f'base-{name}', self.pair(bx, 0), self.pair(by, 0)),
        ]

    def dual_norm(self, coeffs: np.ndarray, anchors: AnchorTuple) -> float | None:
        """
        Bounded iff the functional kills every (a_i, 0) and has no scalar-part coefficient:
        (a_i, 1) and (a_i, 0) both have n-norm 0. Then the norm is the base dual norm.
        """

        base_coeffs, scalar_coeff = coeffs[:-1], coeffs[-1]
        base_anchors = AnchorTuple(anchors=[a.x for a in anchors])
        if not is_zero(scalar_coeff, self.tol) or not vanishes_on(base_coeffs, base_anchors, self.tol):
            return None
        return self.base.dual_norm(base_coeffs, base_anchors)

    def characters(self) -> list[np.ndarray]:
        # (x, a) -> a is the canonical character but it is unbounded: it does not vanish on (a_i, 1)
        return []
