"""Topological divisors of zero.

z is a (left) topological divisor of zero when some sequence z_k of n-norm 1 has
z z_k -> theta. Every search here is a finite-prefix certificate: a NoWitness is not a
proof of absence.
"""

import attr
import enum
import functools
import logging
import math
import numpy as np

from typing import Any, Sequence

from ..algebra.base import AlgebraInstance
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, sweep
from ..core.vector import LinearElement, coordinates_equal
from ..errors import PreconditionError
from .classify import classify_element


TDZ_THRESHOLD = 1e-6
TDZ_K_MAX = 64

logger = logging.getLogger(__name__)


class Side(enum.Enum):
    LEFT = 'left'
    RIGHT = 'right'


@attr.s(slots=True, frozen=True, kw_only=True)
class TdzWitness:
    z: LinearElement = attr.ib()
    sequence: list[LinearElement] = attr.ib()
    decay: list[float] = attr.ib()
    side: Side = attr.ib(default=Side.LEFT)

    @decay.validator
    def _(self, attribute, value) -> None:
        if len(value) != len(self.sequence):
            raise ValueError(f"{len(value)} decay values for {len(self.sequence)} sequence elements")

    @property
    def divisor_of_zero(self) -> bool:
        """The last product vanishes outright: z is an honest divisor of zero."""

        return self.decay[-1] == 0


@attr.s(slots=True, frozen=True, kw_only=True)
class NoWitness:
    z: LinearElement = attr.ib()
    min_decay: float = attr.ib()
    message: str = attr.ib(default="no witness within the scan budget; not a proof of absence")


def _side_product(inst: AlgebraInstance, z: LinearElement, zk: LinearElement, side: Side) -> LinearElement:
    return inst.mul(z, zk) if side is Side.LEFT else inst.mul(zk, z)


def _scan_side(z: LinearElement, inst: AlgebraInstance, side: Side, k_max: int,
               threshold: float) -> tuple[TdzWitness | None, float]:
    sequence, decay = [], []
    previous = None
    for k in range(k_max):
        candidate = inst.tdz_candidate(z, k, right=side is Side.RIGHT)
        if candidate is None:
            break
        if previous is not None and coordinates_equal(candidate.coords, previous.coords, 0):
            # the construction does not depend on k any more
            break
        previous = candidate
        zk = inst.normalized(candidate)
        if zk is None:
            continue
        sequence.append(zk)
        decay.append(inst.norm(_side_product(inst, z, zk, side)))
        if decay[-1] <= threshold:
            return TdzWitness(z=z, sequence=sequence, decay=decay, side=side), decay[-1]
    return None, min(decay, default=math.inf)


def tdz_scan(
    z: LinearElement,
    inst: AlgebraInstance,
    k_max: int = TDZ_K_MAX,
    threshold: float = TDZ_THRESHOLD,
) -> TdzWitness | NoWitness:
    """
    Build the instance's candidate sequence for ``z`` (indicator of the smallest coordinate,
    the top monomial t^D, a near-kernel rank one operator, or the lifted -e of the
    unitization) normalized to n-norm 1 and report a witness once ||z z_k, A|| drops to
    ``threshold``. Right products are scanned too on noncommutative instances.
    """

    inst.check_element(z)
    attained = math.inf
    sides = [Side.LEFT] if inst.commutative else [Side.LEFT, Side.RIGHT]
    for side in sides:
        witness, minimum = _scan_side(z, inst, side, k_max, threshold)
        if witness is not None:
            return witness
        attained = min(attained, minimum)
    logger.debug("no topological divisor witness; min decay %.3e", attained)
    return NoWitness(z=z, min_decay=attained)


def boundary_tdz_witness(
    x: LinearElement,
    approach: Sequence[LinearElement],
    inst: AlgebraInstance,
    tol: float = DEFAULT_TOL,
) -> TdzWitness:
    """
    Boundary points of the non-invertibles are topological divisors of zero: for invertible
    s_k -> x the elements x_k = s_k^-1 / ||s_k^-1, A|| have n-norm 1 and x x_k -> theta.

    :param approach: invertible elements with strictly decreasing ||s_k - x, A||
    :raises PreconditionError: x is invertible, the distances do not decrease, or some s_k
        is not invertible (NonInvertibleError)
    """

    if not approach:
        raise PreconditionError("empty approach sequence")
    if classify_element(x, inst).invertible:
        raise PreconditionError("x is invertible, so it is not a boundary point of the non-invertibles",
                                witness={'x': x})
    distances = [inst.distance(s, x) for s in approach]
    if any(b >= a for a, b in zip(distances, distances[1:])):
        raise PreconditionError("approach distances do not decrease", witness={'distances': distances})

    sequence, decay = [], []
    for index, s in enumerate(approach):
        inverse = classify_element(s, inst)
        if not inverse.invertible:
            raise PreconditionError(f"approach element {index} is not invertible", witness=inverse.witness)
        xk = inst.normalized(inverse.inverse)
        if xk is None:
            raise PreconditionError(f"approach element {index} has an inverse of n-norm 0 or inf")
        if abs(inst.norm(xk) - 1) > max(tol, 1e-9):
            raise PreconditionError(f"normalized inverse {index} has n-norm {inst.norm(xk):.6g}")
        sequence.append(xk)
        decay.append(inst.norm(inst.mul(x, xk)))
    if len(decay) > 1 and not decay[-1] < decay[0]:
        raise PreconditionError("x x_k does not shrink along the approach", witness={'decay': decay})
    return TdzWitness(z=x, sequence=sequence, decay=decay, side=Side.LEFT)


def _tdz_sample(inst: AlgebraInstance, k_max: int, threshold: float, index: int,
                rng: np.random.Generator) -> dict[str, Any]:
    z = inst.random_singular(rng) if index % 2 == 0 else inst.random_element(rng)
    found = tdz_scan(z, inst, k_max, threshold)
    if isinstance(found, NoWitness):
        return {'witness': False}
    verdict_ = classify_element(z, inst)
    if verdict_.invertible:
        return {'witness': True, 'failure': {'z': z, 'decay': found.decay, 'side': found.side}}
    return {'witness': True}


def tdz_subset_check(
    inst: AlgebraInstance,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    k_max: int = TDZ_K_MAX,
    threshold: float = TDZ_THRESHOLD,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    Topological divisors of zero are never invertible: scan random elements (every other one
    drawn singular) and classify each one a witness was found for.
    """

    task = functools.partial(_tdz_sample, inst, k_max, threshold)
    results = sweep(task, samples, seed, settings=settings, desc="Divisor scan")
    failure = next((r for r in results if 'failure' in r.value), None)
    return CheckReport(
        name='tdz-scan',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value['failure']},
        details={
            'witnesses': sum(1 for r in results if r.value['witness']),
            'threshold': threshold,
            'note': "samples without a witness are not proofs of absence",
        },
        flags=collect_flags(results),
    )
