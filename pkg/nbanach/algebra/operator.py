"""Operators on the n-Hilbert space C^d that are bounded for the Gram n-norm.

With anchors b_2, ..., b_n, let P project onto their span and P' = I - P. The Gram n-norm
of x is |P'x| times the anchor volume, so

    ||T|| = sup { ||Tx, b|| : ||x, b|| <= 1 }

is finite exactly when T maps span(b) into itself (P' T P = 0), and then equals the
spectral norm of the compression P' T P'. These operators form a unital algebra whose
b-norm is submultiplicative but only a seminorm: P N P has norm 0.
"""

import attr
import logging
import math
import numpy as np

from fractions import Fraction
from typing import Any, ClassVar, Iterable, Sequence

from ..core.anchors import AnchorTuple
from ..core.axioms import GramNorm, NNorm
from ..core.gram import gram_n_norm
from ..core.linalg import inverse, null_vector, spectral_norm
from ..core.scalar import (
    as_coords,
    coerce_scalar,
    is_exact,
    nonzero_mask,
    random_scalars,
    scalar_to_json,
    to_approximate,
    zeros,
)
from ..core.vector import LinearElement, Vector
from ..errors import DimensionMismatchError, NonInvertibleError, PreconditionError
from .base import DEPENDENCE_TOL, AlgebraInstance, Kind, NormVariant, check_anchors


OPERATOR_NORM_BUDGET = 10 ** 4

logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, eq=False, repr=False)
class OperatorElement(LinearElement):
    _coords: np.ndarray = attr.ib(converter=as_coords)

    @_coords.validator
    def _(self, attribute, value) -> None:
        if value.ndim != 2 or value.shape[0] != value.shape[1] or value.size == 0:
            raise DimensionMismatchError(f"an operator needs a square matrix, got shape {value.shape}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]], *, exact: bool | None = None) -> "OperatorElement":
        return cls(as_coords([list(r) for r in rows], exact=exact))

    @classmethod
    def identity(cls, d: int, *, exact: bool = False) -> "OperatorElement":
        return cls(identity_matrix(d, exact))

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def matrix(self) -> np.ndarray:
        return self._coords

    def _from_coords(self, coords: np.ndarray) -> "OperatorElement":
        return OperatorElement(coords)

    @property
    def d(self) -> int:
        return self._coords.shape[0]

    def apply(self, x: Vector) -> Vector:
        return Vector(self._coords @ x.coords)

    def __repr__(self) -> str:
        fmt = str if self.exact else (lambda v: f'{complex(v):.3g}')
        rows = ['[' + ', '.join(fmt(v) for v in row) + ']' for row in self._coords]
        return f"OperatorElement({', '.join(rows)})"

    def to_dict(self) -> dict[str, Any]:
        return {'matrix': [[scalar_to_json(v) for v in row] for row in self._coords]}


@attr.s(slots=True, frozen=True)
class OperatorNormEstimate:
    """Bracket lower <= ||T|| <= upper; ``exact`` when both ends coincide by the compression formula."""

    lower: float = attr.ib()
    upper: float = attr.ib()
    exact: bool = attr.ib()

    @property
    def value(self) -> float:
        return self.upper


def identity_matrix(d: int, exact: bool) -> np.ndarray:
    out = zeros((d, d), exact)
    for i in range(d):
        out[i, i] = coerce_scalar(1, exact)
    return out


def anchor_projections(anchors: AnchorTuple) -> tuple[np.ndarray, np.ndarray]:
    """
    Orthogonal projections onto span(anchors) and onto its complement, exact in exact mode.

    :raises PreconditionError: anchors linearly dependent
    """

    basis = np.stack([a.coords for a in anchors], axis=1)
    adjoint = np.conj(basis).T
    try:
        gram_inverse = inverse(adjoint @ basis)
    except NonInvertibleError as exc:
        raise PreconditionError("anchors are linearly dependent", witness=exc.witness) from exc
    span = basis @ gram_inverse @ adjoint
    return span, identity_matrix(basis.shape[0], is_exact(basis)) - span


def _vanishes(matrix: np.ndarray, scale: float, tol: float) -> bool:
    if is_exact(matrix):
        return not nonzero_mask(matrix).any()
    return spectral_norm(matrix) <= tol * max(1.0, scale)


def operator_b_norm(
    T: OperatorElement,
    anchors: AnchorTuple,
    *,
    budget: int = OPERATOR_NORM_BUDGET,
    rng: np.random.Generator | None = None,
    tol: float = DEPENDENCE_TOL,
) -> OperatorNormEstimate:
    """
    b-norm sup { ||Tx, b_2, ..., b_n|| : ||x, b_2, ..., b_n|| <= 1 }.

    Exact (spectral norm of the compression to the anchor complement) when T leaves the
    anchor span invariant. Otherwise the supremum is infinite: the estimate carries a
    sampled lower bound over ``budget`` unit-set points pushed along the anchor span, and
    upper = inf.

    :raises PreconditionError: anchors dependent
    :raises DimensionMismatchError: anchor dimension differs from the operator size
    """

    if any(a.coords.shape != (T.d,) for a in anchors):
        raise DimensionMismatchError(f"anchors must live in C^{T.d}")
    span, complement = anchor_projections(anchors)
    matrix = T.matrix
    if _vanishes(complement @ matrix @ span, spectral_norm(matrix), tol):
        value = spectral_norm(complement @ matrix @ complement)
        return OperatorNormEstimate(value, value, True)

    rng = rng if rng is not None else np.random.default_rng(0)
    approx_anchors = AnchorTuple(anchors=[Vector(to_approximate(a.coords)) for a in anchors])
    span, complement, matrix = (to_approximate(m) for m in (span, complement, matrix))
    lower = 0.0
    for i in range(budget):
        raw = rng.normal(size=T.d) + 1j * rng.normal(size=T.d)
        u = complement @ raw
        size = gram_n_norm(Vector(u), approx_anchors)
        if size == 0:
            continue
        shift = 10.0 ** (i % 9) * (span @ (rng.normal(size=T.d) + 1j * rng.normal(size=T.d)))
        x = u / size + shift
        lower = max(lower, gram_n_norm(Vector(matrix @ x), approx_anchors))
    logger.debug("operator leaves the anchor span; sampled lower bound %.3e", lower)
    return OperatorNormEstimate(lower, math.inf, False)


def standard_anchors(n: int, d: int, exact: bool) -> AnchorTuple:
    if d < n:
        raise DimensionMismatchError(f"an {n}-norm on C^{d} needs d >= n")
    return AnchorTuple(anchors=[Vector.basis(d, i, exact=exact) for i in range(1, n)], normalized=True)


@attr.s(slots=True, frozen=True, kw_only=True)
class OperatorAlgebra(AlgebraInstance):
    """b-bounded operators on C^d under composition, normed by the b-norm."""

    kind: ClassVar[Kind] = Kind.OPERATOR
    commutative: ClassVar[bool] = False
    element_type: ClassVar[type] = OperatorElement

    d: int = attr.ib(default=3)
    norm_variant: NormVariant = attr.ib(
        default=NormVariant.GRAM_INDUCED,
        validator=attr.validators.in_([NormVariant.GRAM_INDUCED]),
    )
    anchors: AnchorTuple = attr.ib(validator=check_anchors)
    budget: int = attr.ib(default=OPERATOR_NORM_BUDGET)

    @anchors.default
    def _(self) -> AnchorTuple:
        return standard_anchors(2, self.d, self.exact)

    @classmethod
    def create(cls, *, n: int = 2, d: int = 3, exact: bool = False, **kwargs) -> "OperatorAlgebra":
        return cls(d=d, exact=exact, anchors=standard_anchors(n, d, exact), **kwargs)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.d, self.d)

    def check_anchor(self, anchor: LinearElement) -> None:
        if not isinstance(anchor, Vector) or anchor.dim != self.d:
            raise DimensionMismatchError(f"operator anchors are vectors of C^{self.d}")

    def projections(self, anchors: AnchorTuple | None = None) -> tuple[np.ndarray, np.ndarray]:
        return anchor_projections(anchors if anchors is not None else self.anchors)

    def from_coords(self, coords: np.ndarray) -> OperatorElement:
        return OperatorElement(as_coords(coords, exact=self.exact))

    def element(self, rows: Iterable[Iterable[Any]]) -> OperatorElement:
        return OperatorElement.from_rows(rows, exact=self.exact)

    def unit(self) -> OperatorElement:
        return OperatorElement.identity(self.d, exact=self.exact)

    def basis(self) -> list[OperatorElement]:
        """
        Spanning set of the bounded operators: P'EP', PEP' and PEP over the matrix units E_ij.

        With standard-basis anchors these are exactly the allowed matrix units.
        """

        span, complement = self.projections()
        out = []
        for i in range(self.d):
            for j in range(self.d):
                unit = zeros((self.d, self.d), self.exact)
                unit[i, j] = coerce_scalar(1, self.exact)
                for left, right in ((complement, complement), (span, complement), (span, span)):
                    block = left @ unit @ right
                    if nonzero_mask(block, 1e-12).any():
                        out.append(OperatorElement(block))
        return out

    def _mul(self, u: OperatorElement, v: OperatorElement) -> OperatorElement:
        return OperatorElement(u.matrix @ v.matrix)

    def tuple_norm(self, elements: Sequence[LinearElement]) -> float:
        raise PreconditionError("the operator algebra is normed by the b-norm, not by an n-norm of operator tuples")

    def norm(self, x: LinearElement, anchors: AnchorTuple | None = None) -> float:
        self.check_element(x)
        return self.b_norm(x, anchors).value

    def b_norm(self, x: OperatorElement, anchors: AnchorTuple | None = None) -> OperatorNormEstimate:
        return operator_b_norm(x, anchors if anchors is not None else self.anchors, budget=self.budget, tol=self.tol)

    def magnitude(self, x: LinearElement) -> float:
        return x.length if isinstance(x, Vector) else spectral_norm(x.coords)

    def carrier_norm(self, x: LinearElement) -> float:
        return spectral_norm(x.coords)

    def invert(self, x: OperatorElement) -> OperatorElement:
        self.check_element(x)
        return OperatorElement(inverse(x.matrix))

    def _scaled(self, block: np.ndarray, target: float) -> np.ndarray:
        size = spectral_norm(block)
        if size == 0:
            return block
        factor = target / size
        if self.exact:
            return block * coerce_scalar(Fraction(math.floor(factor * 2 ** 20), 2 ** 20), True)
        return block * factor

    def _blocks(self, rng: np.random.Generator, scale: float,
                anchors: AnchorTuple | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        span, complement = self.projections(anchors)
        draw = lambda: random_scalars(rng, (self.d, self.d), exact=self.exact, scale=scale)  # noqa: E731
        return complement @ draw() @ complement, span @ draw() @ complement, span @ draw() @ span

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> OperatorElement:
        compression, lower, corner = self._blocks(rng, scale)
        return OperatorElement(compression + lower + corner)

    def sample(self, rng: np.random.Generator, radius: float = 1.0,
               anchors: AnchorTuple | None = None) -> OperatorElement:
        """
        Bounded operator with b-norm < radius; the span block is kept no larger than the
        compression so that powers of a contraction still shrink.
        """

        compression, lower, corner = self._blocks(rng, 1.0, anchors)
        target = radius * rng.uniform(0, 1)
        compression = self._scaled(compression, target)
        corner = self._scaled(corner, spectral_norm(compression) * rng.uniform(0, 1))
        return OperatorElement(compression + lower + corner)

    def sample_perturbation(self, rng: np.random.Generator, radius: float) -> OperatorElement:
        compression, lower, _ = self._blocks(rng, 1.0)
        return OperatorElement(self._scaled(compression, radius * rng.uniform(0, 1)) + lower)

    def random_singular(self, rng: np.random.Generator) -> OperatorElement:
        """T(I - w w^* / |w|^2) for a random w of the anchor complement: still bounded, and its compression kills w."""

        _, complement = self.projections()
        w = complement @ random_scalars(rng, self.d, exact=self.exact)
        matrix = self.random_element(rng).matrix
        length2 = (w * np.conj(w)).sum()
        if not length2:
            return OperatorElement(matrix - matrix)
        return OperatorElement(matrix - matrix @ np.outer(w, np.conj(w)) / length2)

    def tdz_candidate(self, z: OperatorElement, k: int, *, right: bool = False) -> OperatorElement | None:
        """
        w w^* for a unit w of the anchor complement with P' z w = 0 (or w^* z P' = 0 on the right side).

        Then ||z (w w^*)|| = |P' z w| |w| vanishes although ||w w^*|| = |w|^2.
        """

        span, complement = self.projections()
        matrix = np.conj(z.matrix).T if right else z.matrix
        try:
            w = null_vector(complement @ matrix @ complement + span)
        except NonInvertibleError:
            return None
        return OperatorElement(np.outer(w, np.conj(w)))

    def describe(self) -> dict[str, Any]:
        return {
            'kind': self.kind.value,
            'norm_variant': self.norm_variant.value,
            'd': self.d,
            'anchors': [a.to_dict()['coords'] for a in self.anchors],
        }

    def adversarial_pairs(self) -> list[tuple[str, LinearElement, LinearElement]]:
        span, complement = self.projections()
        diagonal = zeros((self.d, self.d), self.exact)
        for i in range(self.d):
            diagonal[i, i] = coerce_scalar(i + 1, self.exact)
        graded = OperatorElement(complement @ diagonal @ complement + span @ diagonal @ span)
        return [
            ('identity-squared', self.unit(), self.unit()),
            ('graded-diagonal', graded, graded),
            ('span-block-times-identity', OperatorElement(span), self.unit()),
        ]

    def dual_norm(self, coeffs: np.ndarray, anchors: AnchorTuple) -> float | None:
        """
        T(X) = sum C_ij X_ij = tr(C^T X) is bounded iff it kills every X with range in the
        anchor span (C^T P = 0); its norm is then the nuclear norm of P' C^T P'.
        """

        span, complement = anchor_projections(anchors)
        transposed = coeffs.reshape(self.d, self.d).T
        if not _vanishes(transposed @ span, spectral_norm(transposed), self.tol):
            return None
        compressed = to_approximate(complement @ transposed @ complement)
        return float(np.linalg.svd(compressed, compute_uv=False).sum())

    def characters(self) -> list[np.ndarray]:
        """X -> q^* X q / |q|^2 when the anchor complement is the line through q; none otherwise."""

        if self.d - len(self.anchors) != 1:
            return []
        adjoint = np.conj(np.stack([a.coords for a in self.anchors]))
        q = null_vector(adjoint)
        length2 = (q * np.conj(q)).sum()
        return [(np.outer(np.conj(q), q) / length2).ravel()]

    def as_nnorm(self) -> NNorm:
        return GramNorm(n=self.n, dim=self.d, exact=self.exact, tol=self.tol)
