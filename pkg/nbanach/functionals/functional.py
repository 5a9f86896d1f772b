"""b-linear functionals T(x, b_2, ..., b_n) with the anchors b_i fixed per functional.

A functional is a dense coefficient vector over the flattened coordinates of the instance;
evaluation is the coefficient-weighted sum. Bounded means |T(x)| <= M ||x, b_2, ..., b_n||,
which forces T to vanish on the anchors (they have n-norm 0).
"""

import attr
import functools
import logging
import math
import numpy as np

from typing import Any

from ..algebra.base import AlgebraInstance, evaluate_coeffs
from ..algebra.operator import OPERATOR_NORM_BUDGET
from ..core.anchors import AnchorTuple
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, first_failure, sweep
from ..core.scalar import as_coords, is_exact, magnitude, nonzero_mask, zeros
from ..core.vector import LinearElement
from ..errors import DimensionMismatchError


logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, kw_only=True)
class BLinearFunctional:
    coeffs: np.ndarray = attr.ib()
    anchors: AnchorTuple = attr.ib()
    bound: float | None = attr.ib(default=None)
    label: str = attr.ib(default='')

    @coeffs.validator
    def _(self, attribute, value) -> None:
        if value.ndim != 1:
            raise DimensionMismatchError(f"functional coefficients must be flat, got shape {value.shape}")

    @bound.validator
    def _(self, attribute, value) -> None:
        if value is not None and not value >= 0:
            raise ValueError(f"declared bound {value} is negative")

    def __call__(self, x: LinearElement) -> Any:
        return eval_functional(self, x)

    def __add__(self, other: "BLinearFunctional") -> "BLinearFunctional":
        if not isinstance(other, BLinearFunctional):
            return NotImplemented
        bound = None if self.bound is None or other.bound is None else self.bound + other.bound
        return BLinearFunctional(coeffs=self.coeffs + other.coeffs, anchors=self.anchors, bound=bound,
                                 label=f"{self.label}+{other.label}")

    def __mul__(self, s: Any) -> "BLinearFunctional":
        bound = None if self.bound is None else self.bound * magnitude(s)
        return BLinearFunctional(coeffs=self.coeffs * s, anchors=self.anchors, bound=bound, label=f"{s}*{self.label}")

    def __rmul__(self, s: Any) -> "BLinearFunctional":
        return self * s

    @property
    def exact(self) -> bool:
        return is_exact(self.coeffs)

    def is_zero(self) -> bool:
        return not nonzero_mask(self.coeffs).any()


def eval_functional(T: BLinearFunctional, x: LinearElement) -> Any:
    """
    T(x, b_2, ..., b_n) as the coefficient-weighted coordinate sum.

    :raises DimensionMismatchError: x has a different number of coordinates
    """

    if np.ravel(x.coords).size != T.coeffs.size:
        raise DimensionMismatchError(f"{T.coeffs.size} coefficients cannot evaluate {type(x).__name__}{x.coords.shape}")
    return evaluate_coeffs(T.coeffs, x)


def make_functional(
    inst: AlgebraInstance,
    coeffs: Any,
    *,
    anchors: AnchorTuple | None = None,
    bound: float | None = None,
    label: str = '',
) -> BLinearFunctional:
    """
    Build a functional on ``inst``; anchors default to ones the functional vanishes on
    (``inst.functional_anchors``) and the bound to the closed-form dual norm when there is one.
    """

    coeffs = as_coords(np.ravel(np.asarray(coeffs, dtype=object)), inst.exact)
    if coeffs.size != inst.size:
        raise DimensionMismatchError(f"{coeffs.size} coefficients for an instance of dimension {inst.size}")
    anchors = anchors if anchors is not None else inst.functional_anchors(coeffs)
    for anchor in anchors:
        inst.check_anchor(anchor)
    if bound is None:
        bound = inst.dual_norm(coeffs, anchors)
    return BLinearFunctional(coeffs=coeffs, anchors=anchors, bound=bound, label=label)


def coordinate_functional(inst: AlgebraInstance, index: int, *, scale: Any = 1) -> BLinearFunctional:
    """scale * (flattened coordinate ``index``)."""

    if not 0 <= index < inst.size:
        raise DimensionMismatchError(f"coordinate {index} outside 0..{inst.size - 1}")
    coeffs = zeros(inst.size, inst.exact)
    coeffs[index] = inst.scalar(scale)
    return make_functional(inst, coeffs, label=f"T{index + 1}")


def character_functionals(inst: AlgebraInstance) -> list[BLinearFunctional]:
    """The instance's known bounded characters, each on anchors it vanishes on."""

    return [make_functional(inst, coeffs, label=f"chi{i + 1}") for i, coeffs in enumerate(inst.characters())]


@attr.s(slots=True, frozen=True, kw_only=True)
class FunctionalNorm:
    """
    ||T|| = sup |T(x)| over ||x, b_2, ..., b_n|| <= 1.

    ``exact`` marks a closed form (then lower == upper); ``sampled`` is the largest ratio seen
    by sampling, kept as a cross-check of the closed form.
    """

    lower: float = attr.ib()
    upper: float = attr.ib()
    exact: bool = attr.ib()
    sampled: float = attr.ib(default=0.0)

    @upper.validator
    def _(self, attribute, value) -> None:
        if value < self.lower:
            raise ValueError(f"upper bound {value} below lower bound {self.lower}")


def sampled_ratio(T: BLinearFunctional, inst: AlgebraInstance, budget: int, seed: int) -> float:
    """
    Largest |T(x)| / ||x, b_2, ..., b_n|| over ``budget`` random elements, each pushed along the
    anchor span (which leaves the n-norm unchanged) so that unboundedness shows up.
    """

    rng = np.random.default_rng(seed)
    # operator anchors are vectors, not algebra elements
    shiftable = all(isinstance(a, inst.element_type) for a in T.anchors)
    best = 0.0
    for i in range(budget):
        x = inst.random_element(rng)
        if shiftable:
            weights = rng.normal(size=len(T.anchors)) * 10 ** (i % 9)
            x = sum((a * inst.scalar(float(w)) for a, w in zip(T.anchors, weights)), x)
        size = inst.norm(x, T.anchors)
        if 0 < size < math.inf:
            best = max(best, magnitude(T(x)) / size)
    return best


def functional_norm(
    T: BLinearFunctional,
    inst: AlgebraInstance,
    budget: int = OPERATOR_NORM_BUDGET,
    seed: int = 0,
) -> FunctionalNorm:
    """
    Closed form when the instance has one (sum / max of coefficient moduli, nuclear norm of the
    compression for operators), cross-checked by sampling; otherwise a sampled lower bound with
    upper = inf. A functional that does not vanish on its anchors is unbounded.
    """

    if T.is_zero():
        return FunctionalNorm(lower=0.0, upper=0.0, exact=True)
    sampled = sampled_ratio(T, inst, budget, seed)
    closed = inst.dual_norm(T.coeffs, T.anchors)
    if closed is None:
        logger.debug("no closed-form norm for %s; sampled lower bound %.3e", T.label or 'functional', sampled)
        return FunctionalNorm(lower=sampled, upper=math.inf, exact=False, sampled=sampled)
    if sampled > closed * (1 + 1e-9) + 1e-9:
        logger.warning("sampled ratio %.6g exceeds the closed-form norm %.6g", sampled, closed)
    return FunctionalNorm(lower=closed, upper=closed, exact=True, sampled=sampled)


def _bound_sample(T: BLinearFunctional, inst: AlgebraInstance, tol: float, index: int,
                  rng: np.random.Generator) -> dict[str, Any] | None:
    x = inst.random_element(rng, scale=2.0)
    # additivity and homogeneity in the element slot
    y = inst.random_element(rng)
    alpha = inst.scalar(complex(*rng.normal(size=2)))
    lhs, rhs = T(x * alpha + y), T(x) * alpha + T(y)
    if magnitude(lhs - rhs) > tol * (1 + magnitude(lhs)):
        return {'property': 'linearity', 'x': x, 'y': y, 'alpha': alpha}
    if T.bound is not None:
        value, size = magnitude(T(x)), inst.norm(x, T.anchors)
        if value > T.bound * size + tol * (1 + value):
            return {'property': 'bound', 'x': x, 'value': value, 'rhs': T.bound * size}
    return None


def functional_norm_check(
    T: BLinearFunctional,
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    T is linear in the element slot and obeys its declared bound on every sample, and the
    sampled norm never exceeds the closed form.
    """

    results = sweep(functools.partial(_bound_sample, T, inst, tol), samples, seed, settings=settings,
                    desc="Functional bound")
    failure = first_failure(results)
    norm = functional_norm(T, inst, budget=max(samples, 1), seed=seed)
    counterexample = None if failure is None else {'sample': failure.index, **failure.value}
    if counterexample is None and norm.sampled > norm.upper * (1 + tol) + tol:
        counterexample = {'property': 'closed-form', 'sampled': norm.sampled, 'upper': norm.upper}
    return CheckReport(
        name='functional-norm',
        outcome=verdict(counterexample is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=counterexample,
        details={'functional': T.label, 'lower': norm.lower, 'upper': norm.upper, 'exact': norm.exact,
                 'sampled': norm.sampled},
        flags=collect_flags(results),
    )
