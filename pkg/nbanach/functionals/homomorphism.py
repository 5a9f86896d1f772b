"""Complex b-homomorphisms and both directions of the Gleason-Kahane-Zelazko type theorem.

The converse direction is accepted by exhaustive verification on finite-dimensional
instances: the hypotheses T(e) = 1 and T(x) != 0 on invertibles are tested by an explicit
search for an invertible kernel element, then multiplicativity is checked on every basis pair.
"""

import attr
import functools
import itertools
import logging
import math
import numpy as np
import warnings

from fractions import Fraction
from typing import Any

from ..algebra.base import AlgebraInstance, Kind
from ..algebra.pointwise import PointwiseAlgebra
from ..core.gram import DEFAULT_TOL
from ..core.report import CheckReport, Outcome, verdict
from ..core.sampling import SERIAL, SweepSettings, collect_flags, first_failure, sweep
from ..core.scalar import as_coords, is_zero, magnitude
from ..core.vector import LinearElement
from ..errors import PreconditionError, TruncationWarning
from .functional import BLinearFunctional


SIGN_PATTERN_LIMIT = 10
CHARACTER_CANDIDATES = 10 ** 4
CHARACTER_GRID_STEP = Fraction(1, 4)

logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, kw_only=True)
class HomomorphismVerdict:
    multiplicative: bool = attr.ib()
    unit_value: Any = attr.ib()
    nonzero_on_invertibles: bool = attr.ib()
    counterexample: dict[str, Any] | None = attr.ib(default=None)
    trivial: bool = attr.ib(default=False)

    @counterexample.validator
    def _(self, attribute, value) -> None:
        if self.multiplicative and value is not None:
            raise ValueError("a multiplicative verdict cannot carry a counterexample")


def _close(a: Any, b: Any, tol: float) -> bool:
    return magnitude(a - b) <= tol * max(1.0, magnitude(a), magnitude(b))


def _multiplicative_on(T: BLinearFunctional, inst: AlgebraInstance, x: LinearElement, y: LinearElement,
                       tol: float) -> bool:
    return _close(T(inst.mul(x, y)), T(x) * T(y), tol)


def is_trivial(T: BLinearFunctional, inst: AlgebraInstance) -> bool:
    """Identically zero, decided on the basis."""

    return all(is_zero(T(b)) for b in inst.basis())


def is_b_homomorphism(
    T: BLinearFunctional,
    inst: AlgebraInstance,
    samples: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> HomomorphismVerdict:
    """
    T(xy) = T(x) T(y) on every pair of basis elements (exhaustive, so exact in exact mode) and
    on ``samples`` random pairs; T(e) and nonvanishing on random invertibles are recorded.
    """

    counterexample = None
    basis = inst.basis()
    with warnings.catch_warnings():
        # basis products of a truncated series overflow the degree by design
        warnings.simplefilter('ignore', TruncationWarning)
        for (i, u), (j, v) in itertools.product(enumerate(basis), repeat=2):
            if not _multiplicative_on(T, inst, u, v, tol):
                counterexample = {'pair': [i, j], 'x': u, 'y': v,
                                  'T(xy)': T(inst.mul(u, v)), 'T(x)T(y)': T(u) * T(v)}
                break

        rng = np.random.default_rng(seed)
        for _ in range(samples if counterexample is None else 0):
            x, y = inst.random_element(rng), inst.random_element(rng)
            if not _multiplicative_on(T, inst, x, y, tol):
                counterexample = {'x': x, 'y': y, 'T(xy)': T(inst.mul(x, y)), 'T(x)T(y)': T(x) * T(y)}
                break

        nonzero = all(magnitude(T(inst.random_invertible(rng))) > tol for _ in range(samples))

    return HomomorphismVerdict(
        multiplicative=counterexample is None,
        unit_value=T(inst.unit()),
        nonzero_on_invertibles=nonzero,
        counterexample=counterexample,
        trivial=is_trivial(T, inst),
    )


def _require_homomorphism(T: BLinearFunctional, inst: AlgebraInstance, samples: int, seed: int,
                          tol: float) -> HomomorphismVerdict:
    result = is_b_homomorphism(T, inst, samples, seed, tol)
    if result.trivial:
        raise PreconditionError("functional is identically zero", witness={'functional': T.label})
    if not result.multiplicative:
        raise PreconditionError("functional is not multiplicative", witness=result.counterexample)
    return result


def _lemma_sample(T: BLinearFunctional, inst: AlgebraInstance, tol: float, index: int,
                  rng: np.random.Generator) -> dict[str, Any] | None:
    x = inst.random_invertible(rng)
    value = T(x)
    if magnitude(value) <= tol:
        return {'property': 'nonzero-on-invertibles', 'x': x, 'T(x)': value}
    product = value * T(inst.invert(x))
    if not _close(product, 1, tol):
        return {'property': 'inverse-identity', 'x': x, 'T(x)T(x^-1)': product}
    return None


def homomorphism_lemma_check(
    T: BLinearFunctional,
    inst: AlgebraInstance,
    samples: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    A nonzero complex b-homomorphism has T(e) = 1, and T(x) T(x^-1) = T(e) = 1 for invertible x,
    so T never vanishes on invertibles.

    :raises PreconditionError: T is identically zero or not multiplicative
    """

    result = _require_homomorphism(T, inst, min(samples, 100), seed, tol)
    if not _close(result.unit_value, 1, tol):
        return CheckReport(name='homomorphism-lemma', outcome=Outcome.FAIL, seed=seed, samples=samples, tol=tol,
                           counterexample={'property': 'unit-value', 'T(e)': result.unit_value})
    results = sweep(functools.partial(_lemma_sample, T, inst, tol), samples, seed, settings=settings,
                    desc="Homomorphism lemma")
    failure = first_failure(results)
    return CheckReport(
        name='homomorphism-lemma',
        outcome=verdict(failure is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=None if failure is None else {'sample': failure.index, **failure.value},
        details={'functional': T.label, 'unit_value': result.unit_value},
        flags=collect_flags(results),
    )


def _forward_sample(T: BLinearFunctional, inst: AlgebraInstance, index: int,
                    rng: np.random.Generator) -> tuple[float, LinearElement]:
    x = inst.sample(rng, radius=1.0, anchors=T.anchors)
    return magnitude(T(x)), x


def gkz_forward_check(
    T: BLinearFunctional,
    inst: AlgebraInstance,
    samples: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    A complex b-homomorphism satisfies |T(x)| < 1 whenever ||x, b_2, ..., b_n|| < 1, checked on
    the functional's own anchors; the largest |T(x)| attained is reported.

    :raises PreconditionError: T is not a nonzero b-homomorphism
    """

    _require_homomorphism(T, inst, min(samples, 100), seed, tol)
    results = sweep(functools.partial(_forward_sample, T, inst), samples, seed, settings=settings,
                    desc="Forward direction")
    worst = max(results, key=lambda r: r.value[0], default=None)
    failed = worst is not None and not worst.value[0] < 1
    return CheckReport(
        name='gkz-forward',
        outcome=verdict(failed),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample={'sample': worst.index, 'x': worst.value[1], '|T(x)|': worst.value[0]} if failed else None,
        details={'functional': T.label, 'max_value': worst.value[0] if worst is not None else 0.0},
        flags=collect_flags(results),
    )


def sign_patterns(inst: AlgebraInstance, limit: int = SIGN_PATTERN_LIMIT) -> list[LinearElement]:
    """Sums of +-b_i over the basis, the signs of the first ``limit`` basis elements enumerated."""

    basis = inst.basis()
    free = min(len(basis), limit)
    patterns = []
    for signs in itertools.product((1, -1), repeat=free):
        x = inst.zero()
        for sign, b in zip(itertools.chain(signs, itertools.repeat(1)), basis):
            x = x + b * inst.scalar(sign)
        patterns.append(x)
    return patterns


def invertible_kernel_element(
    T: BLinearFunctional,
    inst: AlgebraInstance,
    samples: int = 0,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    *,
    patterns: list[LinearElement] | None = None,
) -> LinearElement | None:
    """
    Search for an invertible x with T(x) = 0: sign patterns themselves, their projections
    s - (T(s)/T(e)) e onto the kernel, then projections of random elements. ``patterns``
    reuses sign patterns already built for ``inst``.
    """

    unit_value = T(inst.unit())
    rng = np.random.default_rng(seed)
    if patterns is None:
        patterns = sign_patterns(inst)
    candidates = itertools.chain(patterns, (inst.random_element(rng) for _ in range(samples)))
    for s in candidates:
        value = T(s)
        if magnitude(value) <= tol and inst.is_invertible(s):
            return s
        if not is_zero(unit_value, tol):
            projected = s - inst.unit() * inst.scalar(value / unit_value)
            if magnitude(T(projected)) <= tol * max(1.0, magnitude(value)) and inst.is_invertible(projected):
                return projected
    return None


def _converse_sample(T: BLinearFunctional, inst: AlgebraInstance, tol: float, index: int,
                     rng: np.random.Generator) -> dict[str, Any] | None:
    x = inst.random_element(rng)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', TruncationWarning)
        square, value = T(inst.mul(x, x)), T(x)
    if not _close(square, value * value, tol):
        return {'property': 'square-identity', 'x': x, 'T(x^2)': square, 'T(x)^2': value * value}
    size = inst.norm(x, T.anchors)
    if magnitude(value) > size + tol * max(1.0, size):
        return {'property': 'norm-bound', 'x': x, '|T(x)|': magnitude(value), 'norm': size}
    return None


def gkz_converse_check(
    T: BLinearFunctional,
    inst: AlgebraInstance,
    samples: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    *,
    settings: SweepSettings = SERIAL,
) -> CheckReport:
    """
    A bounded T with T(e) = 1 that never vanishes on invertibles is a b-homomorphism.

    Unmet hypotheses give HYPOTHESIS_VIOLATED with the witness (not a failure of the theorem).
    Otherwise multiplicativity is checked exhaustively on basis pairs, the polarization
    identity T(xy + yx) = 2 T(x) T(y) on basis pairs, and the square identity T(x^2) = T(x)^2
    together with |T(x)| <= ||x, b_2, ..., b_n|| on samples.
    """

    def hypothesis(message: str, witness: Any) -> CheckReport:
        return CheckReport(name='gkz-converse', outcome=Outcome.HYPOTHESIS_VIOLATED, seed=seed, samples=samples,
                           tol=tol, witness=witness, message=message, details={'functional': T.label})

    bound = T.bound if T.bound is not None else inst.dual_norm(T.coeffs, T.anchors)
    if bound is None or not math.isfinite(bound):
        return hypothesis("functional is unbounded on its anchors", {'functional': T.label})
    unit_value = T(inst.unit())
    if not _close(unit_value, 1, tol):
        return hypothesis("T(e) != 1", {'T(e)': unit_value})
    kernel = invertible_kernel_element(T, inst, samples, seed, tol)
    if kernel is not None:
        return hypothesis("T vanishes on an invertible element", {'x': kernel, 'T(x)': T(kernel)})

    result = is_b_homomorphism(T, inst, samples, seed, tol)
    counterexample = None if result.multiplicative else {'property': 'multiplicativity', **result.counterexample}
    if counterexample is None:
        basis = inst.basis()
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', TruncationWarning)
            for u, v in itertools.combinations_with_replacement(basis, 2):
                lhs = T(inst.mul(u, v) + inst.mul(v, u))
                if not _close(lhs, T(u) * T(v) * 2, tol):
                    counterexample = {'property': 'polarization', 'x': u, 'y': v, 'T(xy+yx)': lhs}
                    break
    results = []
    if counterexample is None:
        results = sweep(functools.partial(_converse_sample, T, inst, tol), samples, seed, settings=settings,
                        desc="Converse direction")
        failure = first_failure(results)
        if failure is not None:
            counterexample = {'sample': failure.index, **failure.value}

    return CheckReport(
        name='gkz-converse',
        outcome=verdict(counterexample is not None),
        seed=seed,
        samples=samples,
        tol=tol,
        counterexample=counterexample,
        details={'functional': T.label, 'bound': bound},
        flags=collect_flags(results),
    )


def character_grid(m: int, candidates: int = CHARACTER_CANDIDATES,
                   step: Fraction = CHARACTER_GRID_STEP) -> tuple[Fraction, ...]:
    """
    Multiples of ``step`` containing 0 and 1, just long enough that its (m - 1)-fold product
    has ``candidates`` points.
    """

    q = int(1 / step)
    size = q + 1
    if m > 1:
        size = max(size, math.ceil(candidates ** (1 / (m - 1))))
        # float roots can land one off either way
        while size > q + 1 and (size - 1) ** (m - 1) >= candidates:
            size -= 1
        while size ** (m - 1) < candidates:
            size += 1
    low = -((size - q - 1) // 2)
    return tuple(k * step for k in range(low, low + size))


def character_search(inst: AlgebraInstance, tol: float = DEFAULT_TOL, *,
                     grid: tuple[Fraction, ...] | None = None) -> CheckReport:
    """
    Enumerate unit-normalized functionals on C^m, the first m - 1 coefficients over ``grid``
    and the last fixed by T(e) = 1, and confirm that those passing the converse hypotheses are
    multiplicative and that the multiplicative ones are exactly the coordinate projections.
    The default grid gives at least CHARACTER_CANDIDATES candidates. Runs in exact arithmetic.

    :raises PreconditionError: not a pointwise instance
    """

    if inst.kind is not Kind.POINTWISE:
        raise PreconditionError("character enumeration needs the pointwise instance", witness=inst.describe())
    exact = PointwiseAlgebra.create(n=inst.n, m=inst.m, exact=True)
    if grid is None:
        grid = character_grid(exact.m)
    projections = {tuple(Fraction(int(i == j)) for j in range(exact.m)) for i in range(exact.m)}
    patterns = sign_patterns(exact)

    characters, counterexample, candidates = set(), None, 0
    for head in itertools.product(grid, repeat=exact.m - 1):
        coeffs = (*head, Fraction(1) - sum(head, Fraction(0)))
        candidates += 1
        T = BLinearFunctional(coeffs=as_coords(coeffs, exact=True), anchors=exact.anchors)
        multiplicative = is_b_homomorphism(T, exact, samples=0).multiplicative
        if multiplicative:
            characters.add(coeffs)
        elif invertible_kernel_element(T, exact, patterns=patterns) is None:
            # hypotheses hold yet T is not multiplicative
            counterexample = {'coeffs': list(coeffs)}
            break

    if counterexample is None and characters != projections:
        counterexample = {'characters': sorted(map(list, characters)), 'expected': sorted(map(list, projections))}
    logger.debug("character search on C^%d: %d candidates, %d characters", exact.m, candidates, len(characters))
    return CheckReport(
        name='character-search',
        outcome=verdict(counterexample is not None),
        samples=candidates,
        tol=tol,
        counterexample=counterexample,
        details={
            'grid': {'low': min(grid), 'high': max(grid), 'size': len(grid)},
            'unit_normalized_candidates': candidates,
            'characters': len(characters),
        },
    )
