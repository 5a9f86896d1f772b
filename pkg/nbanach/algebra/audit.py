import functools
import logging
import math
import numpy as np

from fractions import Fraction
from typing import Any

from ..core.anchors import AnchorTuple
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, sweep
from ..core.topology import sequence_converges
from ..core.vector import LinearElement, coordinates_equal
from .base import AlgebraInstance


ANCHOR_SCALES = (Fraction(1, 4), Fraction(1, 2), Fraction(2), Fraction(4))
CONTINUITY_STEPS = 36

logger = logging.getLogger(__name__)


def alg_mul(u: LinearElement, v: LinearElement, inst: AlgebraInstance) -> LinearElement:
    """Product of two elements of ``inst``; raises DimensionMismatchError on foreign operands."""

    return inst.mul(u, v)


def _compare(inst: AlgebraInstance, x: LinearElement, y: LinearElement, tol: float,
             anchors: AnchorTuple | None = None) -> dict[str, Any] | None:
    """
    Compare ||xy, A|| with ||x, A|| ||y, A||.

    :return: None when the inequality holds; otherwise the violation, marked ``degenerate``
        when a factor has n-norm 0 (it lies in the anchor span)
    """

    lhs = inst.norm(inst.mul(x, y), anchors)
    nx, ny = inst.norm(x, anchors), inst.norm(y, anchors)
    rhs = nx * ny
    if lhs <= rhs + tol * (1 + rhs):
        return None
    return {'x': x, 'y': y, 'lhs': lhs, 'rhs': rhs, 'degenerate': nx == 0 or ny == 0}


def _multiplicativity_sample(inst: AlgebraInstance, tol: float, index: int,
                             rng: np.random.Generator) -> dict[str, Any] | None:
    x, y = inst.random_element(rng, scale=2.0), inst.random_element(rng, scale=2.0)
    return _compare(inst, x, y, tol)


def _scaling_audit(inst: AlgebraInstance, t: Fraction, tol: float) -> dict[str, Any]:
    anchors = inst.anchors.scaled(inst.scalar(t))
    unit_norm = inst.norm(inst.unit(), anchors)
    broken = [name for name, x, y in inst.adversarial_pairs() if _compare(inst, x, y, tol, anchors) is not None]
    return {
        't': t,
        'unit_norm': unit_norm,
        'unit_norm_holds': abs(unit_norm - 1) <= tol,
        'inequality_holds': not broken,
        'broken_pairs': broken,
    }


def multiplicativity_audit(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    Search for violations of ||xy, A|| <= ||x, A|| ||y, A||.

    The instance's adversarial pairs are tried first, then ``samples`` random pairs.
    Violations where a factor has n-norm 0 are degeneracies of the n-norm itself (the
    factor sits in the anchor span) and are listed as anomalies without failing the audit.
    The anchor-scaling audit rescales the anchors by t in {1/4, 1/2, 2, 4} and records
    whether ||e, tA|| = 1 and the inequality survive; it is informational.
    """

    violation, anomalies = None, []
    for name, x, y in inst.adversarial_pairs():
        found = _compare(inst, x, y, tol)
        if found is None:
            continue
        found = {'pair': name, **found}
        if found['degenerate']:
            anomalies.append(found)
        elif violation is None:
            violation = found

    results = sweep(functools.partial(_multiplicativity_sample, inst, tol), samples, seed,
                    settings=settings, desc="Multiplicativity")
    for r in results:
        if r.value is None:
            continue
        if r.value['degenerate']:
            anomalies.append({'sample': r.index, **r.value})
        elif violation is None:
            violation = {'sample': r.index, **r.value}

    scaling = [_scaling_audit(inst, t, tol) for t in ANCHOR_SCALES]
    if violation is not None:
        logger.info("multiplicative inequality fails: ||xy|| = %.6g > %.6g", violation['lhs'], violation['rhs'])

    return CheckReport(
        name='multiplicativity-audit',
        outcome=verdict(violation is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=violation,
        message=f"{inst.kind.value}[{inst.norm_variant.value}]",
        details={'anomalies': anomalies, 'anchor_scaling': scaling},
        flags=collect_flags(results),
    )


def _unit_law_sample(inst: AlgebraInstance, tol: float, index: int,
                     rng: np.random.Generator) -> dict[str, Any] | None:
    x, e = inst.random_element(rng), inst.unit()
    left, right = inst.mul(e, x), inst.mul(x, e)
    for side, product in (('left', left), ('right', right)):
        if not coordinates_equal(product.coords, x.coords, tol):
            return {'side': side, 'x': x, 'product': product}
    return None


def unit_law_check(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """ex = xe = x (exactly in exact mode) on random elements, and ||e, A|| = 1."""

    unit_norm = inst.norm(inst.unit())
    results = sweep(functools.partial(_unit_law_sample, inst, tol), samples, seed,
                    settings=settings, desc="Unit law")
    failure = next((r for r in results if r.value is not None), None)
    counterexample = None
    if abs(unit_norm - 1) > tol:
        counterexample = {'unit_norm': unit_norm}
    elif failure is not None:
        counterexample = {'sample': failure.index, **failure.value}
    return CheckReport(
        name='unit-law',
        outcome=verdict(counterexample is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=counterexample,
        details={'unit_norm': unit_norm},
        flags=collect_flags(results),
    )


def _continuity_sample(inst: AlgebraInstance, tol: float, steps: int, index: int,
                       rng: np.random.Generator) -> dict[str, Any] | None:
    x, y = inst.random_element(rng), inst.random_element(rng)
    u, v = inst.random_element(rng), inst.random_element(rng)
    xy = inst.mul(x, y)
    nx = inst.norm(x)
    products = []
    for k in range(steps):
        step = inst.scalar(Fraction(1, 2 ** k))
        xk, yk = x + u * step, y + v * step
        product = inst.mul(xk, yk)
        products.append(product)
        lhs = inst.distance(product, xy)
        rhs = inst.distance(xk, x) * inst.norm(yk) + inst.distance(yk, y) * nx
        if lhs > rhs + tol * (1 + rhs):
            return {'k': k, 'x': x, 'y': y, 'u': u, 'v': v, 'lhs': lhs, 'rhs': rhs}
    if not sequence_converges(products, xy, inst.anchors, tol=math.sqrt(tol), norm=inst.norm):
        return {'x': x, 'y': y, 'u': u, 'v': v, 'message': "products do not approach xy"}
    return None


def multiplication_continuity_check(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    steps: int = CONTINUITY_STEPS,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    Continuity of multiplication along x_k = x + 2^-k u, y_k = y + 2^-k v:
    ||x_k y_k - xy, A|| <= ||x_k - x, A|| ||y_k, A|| + ||y_k - y, A|| ||x, A|| at every k, and
    the products approach xy.

    The bound is a consequence of the multiplicative inequality; on an instance that fails
    the audit the check is expected to fail as well.
    """

    results = sweep(functools.partial(_continuity_sample, inst, tol, steps), samples, seed,
                    settings=settings, desc="Continuity of multiplication")
    failure = next((r for r in results if r.value is not None), None)
    return CheckReport(
        name='mul-continuity',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value},
        details={'steps': steps},
        flags=collect_flags(results),
    )
