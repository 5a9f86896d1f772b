import attr
import enum
import functools
import logging
import numpy as np

from typing import Any

from ..algebra.base import AlgebraInstance
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, sweep
from ..core.scalar import random_scalars
from ..core.vector import LinearElement
from ..errors import NonInvertibleError


logger = logging.getLogger(__name__)


class Verdict(enum.Enum):
    INVERTIBLE = 'invertible'
    NON_INVERTIBLE = 'non_invertible'


@attr.s(slots=True, frozen=True, kw_only=True)
class ElementClass:
    """
    Membership of an element in the group G of invertibles or its complement S.

    An INVERTIBLE verdict carries the inverse and the two-sided residual
    max(||x x^-1 - e, A||, ||x^-1 x - e, A||); a NON_INVERTIBLE one carries the witness
    reported by the instance (a vanishing coordinate, constant term or scalar part, or a
    singular matrix).
    """

    element: LinearElement = attr.ib()
    verdict: Verdict = attr.ib()
    inverse: LinearElement | None = attr.ib(default=None)
    residual: float | None = attr.ib(default=None)
    witness: Any = attr.ib(default=None)

    @property
    def invertible(self) -> bool:
        return self.verdict is Verdict.INVERTIBLE


def classify_element(x: LinearElement, inst: AlgebraInstance) -> ElementClass:
    """
    Decide whether ``x`` is invertible by the instance's exact rule: nonzero coordinates
    (pointwise), nonzero constant term (series), a regular matrix (operators), nonzero scalar
    part with x + a e invertible (unitization).
    """

    try:
        inverse = inst.invert(x)
    except NonInvertibleError as exc:
        return ElementClass(element=x, verdict=Verdict.NON_INVERTIBLE, witness={'reason': str(exc), 'data': exc.witness})
    e = inst.unit()
    residual = max(inst.distance(inst.mul(x, inverse), e), inst.distance(inst.mul(inverse, x), e))
    return ElementClass(element=x, verdict=Verdict.INVERTIBLE, inverse=inverse, residual=residual)


def _group_sample(inst: AlgebraInstance, tol: float, index: int, rng: np.random.Generator) -> dict[str, Any] | None:
    x, y = inst.random_invertible(rng), inst.random_invertible(rng)
    product = classify_element(inst.mul(x, y), inst)
    if not product.invertible:
        return {'property': 'closure', 'x': x, 'y': y, 'witness': product.witness}
    expected = inst.mul(inst.invert(y), inst.invert(x))
    gap = inst.distance(product.inverse, expected)
    if gap > tol * (1 + inst.norm(expected)):
        return {'property': 'product-inverse', 'x': x, 'y': y, 'gap': gap}

    alpha = random_scalars(rng, 1, exact=inst.exact, scale=2.0)[0]
    if not alpha:
        return None
    scaled = inst.invert(y * alpha)
    expected = inst.invert(y) * (inst.scalar(1) / alpha)
    gap = inst.distance(scaled, expected)
    if gap > tol * (1 + inst.norm(expected)):
        return {'property': 'scalar-inverse', 'y': y, 'alpha': alpha, 'gap': gap}
    return None


def group_property_check(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    G is a group: for random invertible x, y the product is invertible with
    (xy)^-1 = y^-1 x^-1, and (alpha y)^-1 = alpha^-1 y^-1 for alpha != 0.
    """

    results = sweep(functools.partial(_group_sample, inst, tol), samples, seed, settings=settings,
                    desc="Group property")
    failure = next((r for r in results if r.value is not None), None)
    return CheckReport(
        name='group-property',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value},
        flags=collect_flags(results),
    )


def _classification_sample(inst: AlgebraInstance, tol: float, index: int,
                           rng: np.random.Generator) -> dict[str, Any] | None:
    x = inst.random_invertible(rng)
    result = classify_element(x, inst)
    if not result.invertible:
        return {'property': 'invertible', 'x': x, 'witness': result.witness}
    if result.residual > tol * (1 + inst.norm(result.inverse)):
        return {'property': 'residual', 'x': x, 'residual': result.residual}

    z = inst.random_singular(rng)
    if classify_element(z, inst).invertible:
        return {'property': 'singular', 'z': z}
    return None


def classification_check(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """Random invertible elements land in G with a small residual, random singular ones in S."""

    results = sweep(functools.partial(_classification_sample, inst, tol), samples, seed, settings=settings,
                    desc="Classify")
    failure = next((r for r in results if r.value is not None), None)
    return CheckReport(
        name='classify',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value},
        flags=collect_flags(results),
    )
