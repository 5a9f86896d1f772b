"""Neumann-series inversion with a certified geometric tail.

If ||x, A|| = q < 1 then (e - x)^-1 = e + x + x^2 + ..., and the telescoping identity
(e - x)(e + x + ... + x^k) = e - x^{k+1} bounds the residual by q^{k+1} <= q^{k+1}/(1 - q).
"""

import attr
import functools
import logging
import math
import numpy as np

from fractions import Fraction
from typing import Any

from ..algebra.base import AlgebraInstance, Kind
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, first_failure, sweep
from ..core.scalar import coerce_scalar, magnitude, random_scalars
from ..core.vector import LinearElement
from ..errors import PreconditionError


DEFAULT_MAX_TERMS = 10 ** 6

logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, kw_only=True)
class NeumannResult:
    approx_inverse: LinearElement = attr.ib()
    terms_used: int = attr.ib()
    contraction_q: float = attr.ib()
    tail_bound: float = attr.ib()
    residual: float = attr.ib()
    left_residual: float = attr.ib()
    certified: bool = attr.ib()
    truncated: bool = attr.ib(default=False)

    @contraction_q.validator
    def _(self, attribute, value) -> None:
        if not 0 <= value < 1:
            raise ValueError(f"contraction factor {value} outside [0, 1)")


def default_max_terms(inst: AlgebraInstance) -> int:
    # powers of a series run out of room past the degree cap
    if inst.kind is Kind.TRUNCATED_SERIES:
        return inst.degree
    return DEFAULT_MAX_TERMS


def terms_needed(q: float, tol: float, max_terms: int) -> tuple[int, bool]:
    """
    Smallest k with q^{k+1}/(1 - q) <= tol, capped at ``max_terms``.

    :return: (k, whether the cap was hit)
    """

    if q == 0:
        return 0, False
    if tol <= 0:
        return max_terms, True
    k = max(0, math.ceil(math.log(tol * (1 - q)) / math.log(q)) - 1)
    while k > 0 and q ** k / (1 - q) <= tol:
        k -= 1
    while q ** (k + 1) / (1 - q) > tol:
        k += 1
    if k > max_terms:
        return max_terms, True
    return k, False


def _partial_sum(x: LinearElement, inst: AlgebraInstance, k: int) -> LinearElement:
    total = power = inst.unit()
    for _ in range(k):
        power = inst.mul(power, x)
        total = total + power
    return total


def _residuals(generator: LinearElement, approx: LinearElement, inst: AlgebraInstance) -> tuple[float, float]:
    e = inst.unit()
    target = e - generator
    return inst.distance(inst.mul(target, approx), e), inst.distance(inst.mul(approx, target), e)


def neumann_inverse(
    x: LinearElement,
    inst: AlgebraInstance,
    tol: float = DEFAULT_TOL,
    max_terms: int | None = None,
) -> NeumannResult:
    """
    Approximate (e - x)^-1 by e + x + ... + x^k.

    k is the first index whose geometric tail q^{k+1}/(1 - q) is at most ``tol``, with
    q = ||x, A|| on the instance anchors. The residual ||(e - x) S - e, A|| is measured and
    the result is ``certified`` when it is within tail_bound + tol; an uncertified result
    (possible when the norm is not submultiplicative) is logged as a warning.

    :raises PreconditionError: q >= 1 or q infinite
    """

    inst.check_element(x)
    q = inst.norm(x)
    if not q < 1:
        raise PreconditionError(f"||x, A|| = {q:.6g} is not below 1", witness={'q': q})

    k, truncated = terms_needed(q, tol, max_terms if max_terms is not None else default_max_terms(inst))
    approx = _partial_sum(x, inst, k)
    tail_bound = q ** (k + 1) / (1 - q)
    residual, left_residual = _residuals(x, approx, inst)
    certified = residual <= tail_bound + tol and left_residual <= tail_bound + tol
    if truncated:
        logger.debug("term cap %d reached before the tail fell below %.1e", k, tol)
    if not certified:
        logger.warning("Neumann residual %.3e exceeds the tail bound %.3e", residual, tail_bound)

    return NeumannResult(
        approx_inverse=approx,
        terms_used=k,
        contraction_q=q,
        tail_bound=tail_bound,
        residual=residual,
        left_residual=left_residual,
        certified=certified,
        truncated=truncated,
    )


def near_identity_inverse(
    x: LinearElement,
    inst: AlgebraInstance,
    tol: float = DEFAULT_TOL,
    max_terms: int | None = None,
) -> NeumannResult:
    """x^-1 = e + (e - x) + (e - x)^2 + ... when ||e - x, A|| < 1."""

    return neumann_inverse(inst.unit() - x, inst, tol, max_terms)


def resolvent_inverse(
    lam: Any,
    x: LinearElement,
    inst: AlgebraInstance,
    tol: float = DEFAULT_TOL,
    max_terms: int | None = None,
) -> NeumannResult:
    """
    (lam e - x)^-1 = lam^-1 e + lam^-2 x + lam^-3 x^2 + ... for ||x, A|| < |lam|.

    Computed as lam^-1 (e - x/lam)^-1, so q = ||x, A|| / |lam| and the residual is
    ||(lam e - x) R - e, A||.

    :raises PreconditionError: |lam| <= ||x, A||
    """

    lam = coerce_scalar(lam, inst.exact)
    size = inst.norm(x)
    if not magnitude(lam) > size:
        raise PreconditionError(f"|lambda| = {magnitude(lam):.6g} does not exceed ||x, A|| = {size:.6g}",
                                witness={'lambda': lam, 'norm': size})
    inv_lam = coerce_scalar(1, inst.exact) / lam
    inner = neumann_inverse(x * inv_lam, inst, tol, max_terms)
    return attr.evolve(inner, approx_inverse=inner.approx_inverse * inv_lam)


NEUMANN_RADIUS = 0.9


def _soundness_sample(inst: AlgebraInstance, tol: float, index: int, rng: np.random.Generator) -> dict | None:
    x = inst.sample(rng, radius=NEUMANN_RADIUS)
    result = neumann_inverse(x, inst, tol)
    if not result.certified:
        return {'property': 'tail-bound', 'x': x, 'residual': result.residual, 'tail_bound': result.tail_bound}
    gap = inst.distance(result.approx_inverse, inst.invert(inst.unit() - x))
    if gap > result.tail_bound + 10 * tol:
        return {'property': 'oracle', 'x': x, 'gap': gap, 'tail_bound': result.tail_bound}
    return None


def _resolvent_sample(inst: AlgebraInstance, tol: float, index: int, rng: np.random.Generator) -> dict | None:
    lam = random_scalars(rng, 1, exact=inst.exact, scale=0.5)[0] + inst.scalar(Fraction(3, 2))
    size = magnitude(lam)
    x = inst.sample(rng, radius=NEUMANN_RADIUS * size)
    result = resolvent_inverse(lam, x, inst, tol)
    gap = inst.distance(result.approx_inverse, inst.invert(inst.unit() * lam - x))
    if not result.certified or gap > result.tail_bound / size + 10 * tol:
        return {'x': x, 'lambda': lam, 'gap': gap, 'residual': result.residual, 'tail_bound': result.tail_bound}
    return None


def _neumann_report(name: str, task: Any, inst: AlgebraInstance, samples: int, seed: int, tol: float,
                    settings: SweepSettings) -> CheckReport:
    results = sweep(functools.partial(task, inst, tol), samples, seed, settings=settings, desc=name.capitalize())
    failure = first_failure(results)
    return CheckReport(
        name=name,
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value},
        details={'radius': NEUMANN_RADIUS},
        flags=collect_flags(results),
    )


def neumann_soundness_check(inst: AlgebraInstance, samples: int, seed: int, tol: float = DEFAULT_TOL, *,
                            settings: SweepSettings = SERIAL) -> CheckReport:
    """
    For random x with ||x, A|| < 0.9 the Neumann sum is certified and lies within its tail
    bound (plus slack) of the exact inverse of e - x.
    """

    return _neumann_report('invert', _soundness_sample, inst, samples, seed, tol, settings)


def resolvent_check(inst: AlgebraInstance, samples: int, seed: int, tol: float = DEFAULT_TOL, *,
                    settings: SweepSettings = SERIAL) -> CheckReport:
    """Same as ``neumann_soundness_check`` for (lam e - x)^-1 with 1 <= |lam| <= 2 and ||x, A|| < 0.9 |lam|."""

    return _neumann_report('resolvent', _resolvent_sample, inst, samples, seed, tol, settings)
