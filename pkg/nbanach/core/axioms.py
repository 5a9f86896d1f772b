import attr
import functools
import itertools
import logging
import numpy as np

from typing import Any, Sequence

from .anchors import AnchorTuple
from .gram import DEFAULT_TOL, cauchy_schwarz_gap, gram_n_norm
from .linalg import is_dependent
from .report import CheckReport, verdict
from .sampling import SERIAL, SweepSettings, collect_flags, first_failure, sweep
from .scalar import magnitude, random_scalars
from .vector import LinearElement, Vector


logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, kw_only=True)
class NNorm:
    """
    Handle of an n-norm over some element type: evaluates full n-tuples and draws random elements.
    """

    n: int = attr.ib()
    exact: bool = attr.ib(default=False)
    tol: float = attr.ib(default=DEFAULT_TOL)

    @n.validator
    def _(self, attribute, value) -> None:
        if value < 2:
            raise ValueError(f"an n-norm needs n >= 2, got {value}")

    @property
    def name(self) -> str:
        return type(self).__name__

    def __call__(self, elements: Sequence[LinearElement]) -> float:
        raise NotImplementedError()

    def sample(self, rng: np.random.Generator) -> LinearElement:
        raise NotImplementedError()


@attr.s(slots=True, frozen=True, kw_only=True)
class GramNorm(NNorm):
    dim: int = attr.ib()

    @dim.validator
    def _(self, attribute, value) -> None:
        if value < self.n:
            raise ValueError(f"dim {value} < n = {self.n}")

    def __call__(self, elements: Sequence[LinearElement]) -> float:
        return gram_n_norm(elements[0], AnchorTuple(anchors=elements[1:]), tol=self.tol)

    def sample(self, rng: np.random.Generator) -> Vector:
        return Vector(random_scalars(rng, self.dim, exact=self.exact, scale=2.0))


def _axiom_sample(norm: NNorm, tol: float, index: int, rng: np.random.Generator) -> dict[str, Any] | None:
    n = norm.n
    elements = [norm.sample(rng) for _ in range(n)]
    rest = elements[1:]
    value = norm(elements)

    # N1: a combination of the other slots makes the tuple dependent
    coeffs = random_scalars(rng, n - 1, exact=norm.exact, scale=2.0)
    combination = rest[0] * coeffs[0]
    for element, coeff in zip(rest[1:], coeffs[1:]):
        combination = combination + element * coeff
    dependent_value = norm([combination, *rest])
    if dependent_value > tol:
        return {'axiom': 'N1', 'elements': [combination, *rest], 'value': dependent_value}
    if not is_dependent([e.coords for e in elements], tol) and value <= 0:
        return {'axiom': 'N1', 'elements': elements, 'value': value, 'message': "independent tuple with zero norm"}

    # N2
    for perm in itertools.permutations(range(n)):
        permuted = [elements[i] for i in perm]
        other = norm(permuted)
        if abs(other - value) > tol * (1 + value):
            return {'axiom': 'N2', 'elements': elements, 'permutation': list(perm), 'lhs': other, 'rhs': value}

    # N3
    alpha = random_scalars(rng, 1, exact=norm.exact, scale=3.0)[0]
    lhs = norm([elements[0] * alpha, *rest])
    rhs = magnitude(alpha) * value
    if abs(lhs - rhs) > tol * (1 + rhs):
        return {'axiom': 'N3', 'elements': elements, 'alpha': alpha, 'lhs': lhs, 'rhs': rhs}

    # N4
    y = norm.sample(rng)
    lhs = norm([elements[0] + y, *rest])
    rhs = value + norm([y, *rest])
    if lhs > rhs + tol * (1 + rhs):
        return {'axiom': 'N4', 'elements': elements, 'y': y, 'lhs': lhs, 'rhs': rhs}

    return None


def check_n_norm_axioms(
    norm: NNorm,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    Test axioms N1-N4 of an n-norm on seeded random tuples.

    N1 is probed both ways (a dependent tuple evaluates to 0, an independent one does not),
    N2 over every permutation of the full tuple, N3 with a random complex factor and N4 with
    a random second summand in the first slot.

    :param norm: any NNorm handle
    :param samples: number of random tuples
    :param seed: sweep seed
    :param tol: comparison tolerance (relative to 1 + value)
    :return: report carrying the first counterexample found, if any
    """

    results = sweep(functools.partial(_axiom_sample, norm, tol), samples, seed, settings=settings, desc="N-norm axioms")
    failure = first_failure(results)
    counts: dict[str, int] = {}
    for r in results:
        if r.value is not None:
            counts[r.value['axiom']] = counts.get(r.value['axiom'], 0) + 1
    if failure is not None:
        logger.info("%s violates %s at sample %d", norm.name, failure.value['axiom'], failure.index)

    return CheckReport(
        name='n-norm-axioms',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value},
        message=f"{norm.name}, n = {norm.n}",
        details={'violations': counts},
        flags=collect_flags(results),
    )


def _cauchy_schwarz_sample(dim: int, n: int, exact: bool, tol: float, index: int,
                           rng: np.random.Generator) -> tuple[float, dict[str, Any] | None]:
    x, y, *anchors = [Vector(random_scalars(rng, dim, exact=exact, scale=2.0)) for _ in range(n + 1)]
    tuple_ = AnchorTuple(anchors=anchors)
    gap = cauchy_schwarz_gap(x, y, tuple_, tol=tol)
    scale = gram_n_norm(x, tuple_, tol=tol) * gram_n_norm(y, tuple_, tol=tol)
    if gap < -tol * (1 + scale):
        return gap, {'x': x, 'y': y, 'anchors': anchors, 'gap': gap}
    return gap, None


def cauchy_schwarz_check(
    dim: int,
    n: int,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    exact: bool = False,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """Sweep cauchy_schwarz_gap over random (x, y, anchors) and report the smallest gap seen."""

    task = functools.partial(_cauchy_schwarz_sample, dim, n, exact, tol)
    results = sweep(task, samples, seed, settings=settings, desc="Cauchy-Schwarz")
    failure = next((r for r in results if r.value[1] is not None), None)
    return CheckReport(
        name='cauchy-schwarz',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else failure.value[1],
        details={'min_gap': min((r.value[0] for r in results), default=0.0), 'dim': dim, 'n': n},
        flags=collect_flags(results),
    )
