"""Openness of the group of invertibles and the continuity / perturbation bounds of inversion.

All estimates are taken against the instance anchors. The perturbation bound is the
quadratic one, 2 ||x^-1||^3 ||h||^2; the chain ||x^-1 h||^2 ||x^-1|| <= ||x^-1||^3 ||h||^2
supports it.
"""

import functools
import logging
import math
import numpy as np

from typing import Any

from ..algebra.base import AlgebraInstance
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, Outcome, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, first_failure, sweep
from ..core.vector import LinearElement
from ..errors import NonInvertibleError, PreconditionError
from .classify import classify_element


OPENNESS_PERTURBATIONS = 100
SLOPE_TOL = 0.1

logger = logging.getLogger(__name__)


def _inverse_of(x: LinearElement, inst: AlgebraInstance) -> LinearElement:
    result = classify_element(x, inst)
    if not result.invertible:
        raise NonInvertibleError("element is not invertible", witness=result.witness)
    return result.inverse


def invertibility_radius(x0: LinearElement, inst: AlgebraInstance, inverse: LinearElement | None = None) -> float:
    """
    r = 1/||x0^-1, A||: every x0 + h with ||h, A|| < r is invertible.

    An inverse of n-norm 0 (it lies in the anchor span) gives r = inf; an unbounded one r = 0.

    :raises NonInvertibleError: x0 is not invertible
    """

    inverse = inverse if inverse is not None else _inverse_of(x0, inst)
    size = inst.norm(inverse)
    if size == 0:
        return math.inf
    return 1 / size


def _openness_sample(inst: AlgebraInstance, perturbations: int, index: int,
                     rng: np.random.Generator) -> dict[str, Any]:
    x0 = inst.random_invertible(rng)
    inverse = inst.invert(x0)
    radius = invertibility_radius(x0, inst, inverse)
    if not 0 < radius < math.inf:
        return {'skipped': True, 'radius': radius}

    worst = 0.0
    for _ in range(perturbations):
        h = inst.sample_perturbation(rng, radius)
        # x0 + h = x0 (e - z) with z = -x0^-1 h
        worst = max(worst, inst.norm(inst.mul(inverse, h)))
        result = classify_element(x0 + h, inst)
        if not result.invertible:
            return {'failure': {'x0': x0, 'h': h, 'radius': radius, 'witness': result.witness}}
    return {'radius': radius, 'max_factor_norm': worst}


def openness_check(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    perturbations: int = OPENNESS_PERTURBATIONS,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    For ``samples`` random invertible x0, every one of ``perturbations`` sampled h with
    ||h, A|| < invertibility_radius(x0) leaves x0 + h invertible.

    The largest ||x0^-1 h, A|| seen is recorded: it stays below 1 whenever the norm is
    submultiplicative, which is what the factorization x0 + h = x0 (e + x0^-1 h) needs.
    """

    results = sweep(functools.partial(_openness_sample, inst, perturbations), samples, seed,
                    settings=settings, desc="Openness")
    failure = next((r for r in results if 'failure' in r.value), None)
    checked = [r.value for r in results if 'max_factor_norm' in r.value]
    return CheckReport(
        name='openness',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples * perturbations,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value['failure']},
        details={
            'centers': samples,
            'skipped_centers': sum(1 for r in results if r.value.get('skipped')),
            'min_radius': min((v['radius'] for v in checked), default=None),
            'max_factor_norm': max((v['max_factor_norm'] for v in checked), default=None),
        },
        flags=collect_flags(results),
    )


def _continuity_terms(x0: LinearElement, x: LinearElement, inst: AlgebraInstance) -> dict[str, Any]:
    inverse0 = _inverse_of(x0, inst)
    size0 = inst.norm(inverse0)
    step = inst.distance(x, x0)
    if not step < 1 / (2 * size0):
        raise PreconditionError(f"||x - x0, A|| = {step:.6g} is not below 1/(2 ||x0^-1, A||) = {1 / (2 * size0):.6g}",
                                witness={'x0': x0, 'x': x})
    inverse = _inverse_of(x, inst)
    return {'lhs': inst.distance(inverse, inverse0), 'rhs': 2 * size0 ** 2 * step}


def inversion_continuity_check(
    x0: LinearElement,
    x: LinearElement,
    inst: AlgebraInstance,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """
    ||x^-1 - x0^-1, A|| <= 2 ||x0^-1, A||^2 ||x - x0, A|| for ||x - x0, A|| < 1/(2 ||x0^-1, A||).

    :raises PreconditionError: the step is too large
    :raises NonInvertibleError: x0 or x is not invertible
    """

    terms = _continuity_terms(x0, x, inst)
    return CheckReport(
        name='inversion-continuity',
        outcome=verdict(terms['lhs'] > terms['rhs'] + tol),
        samples=1,
        tol=tol,
        counterexample=None if terms['lhs'] <= terms['rhs'] + tol else {'x0': x0, 'x': x, **terms},
        details=terms,
    )


def _perturbation_terms(x: LinearElement, h: LinearElement, inst: AlgebraInstance) -> dict[str, Any]:
    inverse = _inverse_of(x, inst)
    size = inst.norm(inverse)
    step = inst.norm(h)
    if not step < 1 / (2 * size):
        raise PreconditionError(f"||h, A|| = {step:.6g} is not below 1/(2 ||x^-1, A||) = {1 / (2 * size):.6g}",
                                witness={'x': x, 'h': h})
    perturbed = classify_element(x + h, inst)
    if not perturbed.invertible:
        return {'lhs': math.inf, 'rhs': 2 * size ** 3 * step ** 2, 'witness': perturbed.witness}
    remainder = perturbed.inverse - inverse + inst.mul(inst.mul(inverse, h), inverse)
    return {'lhs': inst.norm(remainder), 'rhs': 2 * size ** 3 * step ** 2}


def perturbation_bound_check(
    x: LinearElement,
    h: LinearElement,
    inst: AlgebraInstance,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """
    x + h is invertible and ||(x + h)^-1 - x^-1 + x^-1 h x^-1, A|| <= 2 ||x^-1, A||^3 ||h, A||^2.

    :raises PreconditionError: ||h, A|| >= 1/(2 ||x^-1, A||)
    """

    terms = _perturbation_terms(x, h, inst)
    failed = not terms['lhs'] <= terms['rhs'] + tol
    return CheckReport(
        name='perturbation',
        outcome=verdict(failed),
        samples=1,
        tol=tol,
        counterexample={'x': x, 'h': h, **terms} if failed else None,
        details=terms,
    )


def _admissible_pair(inst: AlgebraInstance, rng: np.random.Generator) -> tuple[LinearElement, LinearElement]:
    x0 = inst.random_invertible(rng)
    radius = invertibility_radius(x0, inst)
    if not math.isfinite(radius):
        radius = 1.0
    # strictly inside half the radius
    return x0, inst.sample_perturbation(rng, radius / 2 * (1 - 2 ** -10))


def _continuity_sample(inst: AlgebraInstance, tol: float, index: int, rng: np.random.Generator) -> dict | None:
    x0, h = _admissible_pair(inst, rng)
    terms = _continuity_terms(x0, x0 + h, inst)
    if terms['lhs'] > terms['rhs'] + tol:
        return {'x0': x0, 'x': x0 + h, **terms}
    return None


def _perturbation_sample(inst: AlgebraInstance, tol: float, index: int, rng: np.random.Generator) -> dict | None:
    x, h = _admissible_pair(inst, rng)
    terms = _perturbation_terms(x, h, inst)
    if not terms['lhs'] <= terms['rhs'] + tol:
        return {'x': x, 'h': h, **terms}
    return None


def _sweep_report(name: str, task: Any, inst: AlgebraInstance, samples: int, seed: int, tol: float,
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
        flags=collect_flags(results),
    )


def inversion_continuity_sweep(inst: AlgebraInstance, samples: int, seed: int, tol: float = DEFAULT_TOL, *,
                               settings: SweepSettings = SERIAL) -> CheckReport:
    return _sweep_report('inversion-continuity', _continuity_sample, inst, samples, seed, tol, settings)


def perturbation_sweep(inst: AlgebraInstance, samples: int, seed: int, tol: float = DEFAULT_TOL, *,
                       settings: SweepSettings = SERIAL) -> CheckReport:
    return _sweep_report('perturbation', _perturbation_sample, inst, samples, seed, tol, settings)


def perturbation_scaling(
    inst: AlgebraInstance,
    tol: float = DEFAULT_TOL,
    *,
    epsilons: np.ndarray | None = None,
) -> CheckReport:
    """
    Log-log slope of the perturbation remainder at x = e along h = eps * b, b the first basis
    element; the quadratic bound predicts a slope of 2.
    """

    epsilons = epsilons if epsilons is not None else np.geomspace(1e-3, 1e-2, 8)
    e = inst.unit()
    direction = inst.basis()[0]
    size = inst.norm(direction)
    if size == 0 or not math.isfinite(size):
        return CheckReport(name='perturbation-scaling', outcome=Outcome.HYPOTHESIS_VIOLATED, tol=tol,
                           message="first basis element has zero or infinite n-norm")

    remainders = []
    for eps in epsilons:
        h = direction * inst.scalar(float(eps) / size)
        terms = _perturbation_terms(e, h, inst)
        remainders.append(terms['lhs'])
    remainders = np.asarray(remainders, dtype=float)

    if np.all(remainders <= tol):
        # the remainder vanishes identically along this direction (e.g. a nilpotent h)
        return CheckReport(name='perturbation-scaling', outcome=Outcome.PASS, samples=len(epsilons), tol=tol,
                           details={'epsilons': epsilons, 'remainders': remainders, 'slope': None})

    slope = float(np.polyfit(np.log(epsilons), np.log(np.maximum(remainders, np.finfo(float).tiny)), 1)[0])
    logger.debug("perturbation remainder slope %.4f", slope)
    return CheckReport(
        name='perturbation-scaling',
        outcome=verdict(abs(slope - 2) > SLOPE_TOL),
        samples=len(epsilons),
        tol=tol,
        counterexample=None if abs(slope - 2) <= SLOPE_TOL else {'slope': slope},
        details={'epsilons': epsilons, 'remainders': remainders, 'slope': slope},
    )
