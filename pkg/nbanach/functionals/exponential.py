import functools
import logging
import math
import numpy as np

from fractions import Fraction
from typing import Any

from ..algebra.base import AlgebraInstance
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, first_failure, sweep
from ..core.scalar import coerce_scalar, magnitude, random_scalars
from ..core.vector import LinearElement
from ..errors import NumericalBreakdownError
from ..invertibility.classify import classify_element


EXP_TOL = 1e-12
EXP_MAX_TERMS = 10 ** 4
LAMBDA_RADIUS = 2.0

logger = logging.getLogger(__name__)


def exponential_terms(rho: float, tol: float, max_terms: int = EXP_MAX_TERMS) -> int:
    """
    Smallest k with rho^{k+1}/(k+1)! / (1 - rho/(k+2)) <= tol, the factorial tail after the
    term of degree k.

    :raises NumericalBreakdownError: no such k below ``max_terms``
    """

    if rho == 0:
        return 0
    term = 1.0
    for k in range(max_terms):
        term *= rho / (k + 1)
        ratio = rho / (k + 2)
        if ratio < 1 and term / (1 - ratio) <= tol:
            return k
    raise NumericalBreakdownError(f"exponential of size {rho:.3g} needs more than {max_terms} terms")


def algebra_exponential(a: LinearElement, lam: Any, inst: AlgebraInstance, tol: float = EXP_TOL) -> LinearElement:
    """
    L(lam) = e + lam a + (lam a)^2/2! + ... cut where the factorial tail drops below ``tol``.

    The tail is bounded with rho = |lam| max(||a, A||, ||a||_carrier): the n-norm alone vanishes
    on the anchor span, the carrier norm does not. An infinite n-norm (an operator leaving the
    anchor span) falls back to the carrier norm.
    """

    inst.check_element(a)
    lam = coerce_scalar(lam, inst.exact)
    size = inst.norm(a)
    carrier = inst.carrier_norm(a)
    rho = magnitude(lam) * (max(size, carrier) if math.isfinite(size) else carrier)
    k = exponential_terms(rho, tol)
    step = a * lam
    term = total = inst.unit()
    for j in range(1, k + 1):
        term = inst.mul(term, step) * inst.scalar(Fraction(1, j))
        total = total + term
    logger.debug("exponential with %d terms (rho=%.3g)", k, rho)
    return total


def _scaled_generator(inst: AlgebraInstance, rng: np.random.Generator) -> LinearElement:
    a = inst.random_element(rng)
    size = inst.carrier_norm(a)
    if size > 1:
        # keep the series short while staying exact
        factor = Fraction(math.floor(2 ** 20 / size), 2 ** 20)
        a = a * inst.scalar(factor)
    return a


def _exponential_sample(inst: AlgebraInstance, tol: float, index: int,
                        rng: np.random.Generator) -> dict[str, Any] | None:
    a = _scaled_generator(inst, rng)
    lam, mu = random_scalars(rng, 2, exact=inst.exact, scale=LAMBDA_RADIUS)
    exp = functools.partial(algebra_exponential, a, inst=inst)
    left, right = exp(lam), exp(mu)

    combined, product = exp(lam + mu), inst.mul(left, right)
    gap = inst.distance(combined, product)
    if gap > tol * (1 + inst.norm(product)):
        return {'property': 'functional-equation', 'a': a, 'lambda': lam, 'mu': mu, 'gap': gap}

    gap = inst.distance(inst.mul(left, exp(-lam)), inst.unit())
    if gap > tol:
        return {'property': 'inverse-pair', 'a': a, 'lambda': lam, 'gap': gap}

    result = classify_element(left, inst)
    if not result.invertible:
        return {'property': 'invertible', 'a': a, 'lambda': lam, 'witness': result.witness}
    return None


def exponential_identities_check(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    For random a with carrier norm at most 1 and lam, mu in the disk of radius 2:
    L(lam + mu) = L(lam) L(mu), L(lam) L(-lam) = e and L(lam) is invertible.
    """

    results = sweep(functools.partial(_exponential_sample, inst, tol), samples, seed, settings=settings,
                    desc="Exponential")
    failure = first_failure(results)
    return CheckReport(
        name='exponential',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value},
        flags=collect_flags(results),
    )
