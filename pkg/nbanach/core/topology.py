"""Finite-prefix proxies for convergence, Cauchy sequences and balls of an n-normed space.

No finite computation decides a limit: these predicates only judge the supplied prefix.
"""

import enum
import itertools

from fractions import Fraction
from typing import Callable, Sequence

from ..errors import PreconditionError
from .anchors import AnchorTuple
from .gram import DEFAULT_TOL, gram_n_norm, gram_n_norm_squared
from .vector import LinearElement, Vector


Distance = Callable[[LinearElement, AnchorTuple], float]


class BallRegion(enum.Enum):
    INSIDE_OPEN = 'inside_open'
    ON_BOUNDARY = 'on_boundary'
    INSIDE_CLOSED_ONLY = 'inside_closed_only'
    OUTSIDE = 'outside'


def _tail(seq: Sequence[LinearElement], tail: int | None) -> Sequence[LinearElement]:
    if not seq:
        raise PreconditionError("empty sequence")
    size = tail if tail is not None else max(2, len(seq) // 4)
    return seq[-min(size, len(seq)):]


def sequence_converges(
    seq: Sequence[LinearElement],
    x: LinearElement,
    anchors: AnchorTuple,
    tol: float = DEFAULT_TOL,
    *,
    tail: int | None = None,
    norm: Distance | None = None,
) -> bool:
    """
    Judge whether a finite prefix converges to ``x`` in the n-norm against ``anchors``.

    True iff the last distance ||seq[k] - x, A|| is below ``tol`` and the distances never
    grow (beyond ``tol``) over the tail (the last quarter of the prefix by default).

    :param norm: distance functional ``(element, anchors) -> float``, the Gram n-norm by default
    :raises PreconditionError: empty sequence
    """

    norm = norm or gram_n_norm
    distances = [norm(s - x, anchors) for s in _tail(seq, tail)]
    if distances[-1] > tol:
        return False
    return all(b <= a + tol for a, b in zip(distances, distances[1:]))


def sequence_is_cauchy(
    seq: Sequence[LinearElement],
    anchors: AnchorTuple,
    tol: float = DEFAULT_TOL,
    *,
    tail: int | None = None,
    norm: Distance | None = None,
) -> bool:
    """True iff every pair of tail elements is within ``tol`` of each other."""

    norm = norm or gram_n_norm
    return all(norm(a - b, anchors) <= tol for a, b in itertools.combinations(_tail(seq, tail), 2))


def ball_membership(
    center: Vector,
    radius: float | Fraction,
    anchors: AnchorTuple,
    p: Vector,
    tol: float = DEFAULT_TOL,
) -> BallRegion:
    """
    Locate ``p`` relative to the balls B(center, radius) and B[center, radius].

    Exact mode compares the squared distance with radius^2 without rounding, so a point at
    distance exactly ``radius`` is INSIDE_CLOSED_ONLY. Approximate mode cannot tell the
    sphere apart from its neighbourhood and answers ON_BOUNDARY within ``tol``.

    :raises PreconditionError: radius <= 0
    """

    if radius <= 0:
        raise PreconditionError(f"ball radius must be positive, got {radius}")

    diff = p - center
    if diff.exact:
        squared = gram_n_norm_squared(diff, anchors, tol=tol)
        r2 = Fraction(radius) ** 2
        if squared < r2:
            return BallRegion.INSIDE_OPEN
        if squared == r2:
            return BallRegion.INSIDE_CLOSED_ONLY
        return BallRegion.OUTSIDE

    distance = gram_n_norm(diff, anchors, tol=tol)
    if abs(distance - float(radius)) <= tol * max(1.0, float(radius)):
        return BallRegion.ON_BOUNDARY
    return BallRegion.INSIDE_OPEN if distance < radius else BallRegion.OUTSIDE
