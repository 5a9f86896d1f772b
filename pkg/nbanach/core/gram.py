import attr
import itertools
import logging
import math
import numpy as np
import warnings

from typing import Any

from ..errors import ClampWarning, DimensionMismatchError, NumericalBreakdownError
from .anchors import AnchorTuple
from .linalg import determinant
from .scalar import is_exact, nonzero_mask
from .vector import Vector


DEFAULT_TOL = 1e-9

logger = logging.getLogger(__name__)


def _check_dims(vectors: tuple[Vector, ...], n: int) -> int:
    dims = {v.dim for v in vectors}
    if len(dims) != 1:
        raise DimensionMismatchError(f"vectors of different dimensions {sorted(dims)}")
    dim = dims.pop()
    if dim < n:
        raise DimensionMismatchError(f"an {n}-norm needs dim >= {n}, got {dim}")
    return dim


def n_inner_matrix(x: Vector, y: Vector, anchors: AnchorTuple) -> np.ndarray:
    """
    Matrix whose determinant is the standard n-inner product <x, y | a_2, ..., a_n>.

    Row 0 is (<x, y>, <x, a_2>, ..., <x, a_n>), row i >= 1 is (<a_i, y>, <a_i, a_2>, ..., <a_i, a_n>).
    """

    _check_dims((x, y, *anchors), anchors.n)
    left = (x, *anchors)
    right = (y, *anchors)
    n = anchors.n
    out = np.empty((n, n), dtype=object if x.exact else np.complex128)
    for i, u in enumerate(left):
        for j, v in enumerate(right):
            out[i, j] = u.inner(v)
    return out


@attr.s(slots=True, frozen=True)
class GramMatrix:
    entries: np.ndarray = attr.ib()

    @entries.validator
    def _(self, attribute, value) -> None:
        n = value.shape[0]
        if value.shape != (n, n):
            raise DimensionMismatchError("a Gram matrix is square")
        adjoint = np.conj(value).T
        if is_exact(value):
            hermitian = not nonzero_mask(value - adjoint).any()
        else:
            hermitian = np.allclose(value, adjoint, rtol=1e-9, atol=1e-12)
        if not hermitian:
            raise NumericalBreakdownError("Gram matrix is not Hermitian")

    @classmethod
    def of(cls, x: Vector, anchors: AnchorTuple) -> "GramMatrix":
        return cls(n_inner_matrix(x, x, anchors))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def determinant(self) -> Any:
        return determinant(self.entries)

    def scale(self) -> float:
        """Product of the diagonal: Hadamard's upper bound for the determinant."""

        return math.prod(float(self.entries[i, i].real) for i in range(self.n))

    def is_positive_semidefinite(self, tol: float = DEFAULT_TOL) -> bool:
        if is_exact(self.entries):
            # all principal minors, not only the leading ones
            return all(
                determinant(self.entries[np.ix_(idx, idx)]).real >= 0
                for k in range(1, self.n + 1)
                for idx in itertools.combinations(range(self.n), k)
            )
        eigenvalues = np.linalg.eigvalsh(self.entries)
        return bool(eigenvalues.min() >= -tol * max(1.0, abs(eigenvalues).max()))


def standard_n_inner(x: Vector, y: Vector, anchors: AnchorTuple) -> Any:
    """
    Gram-determinant n-inner product <x, y | a_2, ..., a_n>.

    :param x: first slot (the product is linear in it)
    :param y: second slot (conjugate-linear)
    :param anchors: a_2, ..., a_n
    :return: complex scalar (ComplexScalar in exact mode)
    :raises DimensionMismatchError: mismatched dims, or dim < n
    """

    return determinant(n_inner_matrix(x, y, anchors))


def gram_n_norm_squared(x: Vector, anchors: AnchorTuple, *, tol: float = DEFAULT_TOL) -> Any:
    """
    Squared Gram n-norm ||x, a_2, ..., a_n||^2, exact (a Fraction) in exact mode.

    Approximate mode treats |det| <= tol * scale as a dependent tuple, where scale is
    Hadamard's bound prod <v_i, v_i>. Slightly negative determinants in that band are
    clamped to zero with a ClampWarning; more negative ones abort.

    :raises NumericalBreakdownError: determinant below -tol * scale
    """

    gram = GramMatrix.of(x, anchors)
    det = gram.determinant().real
    if x.exact:
        return det

    scale = gram.scale()
    if det < -tol * scale:
        raise NumericalBreakdownError(f"negative Gram determinant {det:.3e} (scale {scale:.3e})")
    if det < 0:
        warnings.warn(ClampWarning(f"Gram determinant {det:.3e} clamped to 0"), stacklevel=2)
        logger.debug("clamped Gram determinant %.3e", det)
        return 0.0
    if det <= tol * scale:
        return 0.0
    return float(det)


def gram_n_norm(x: Vector, anchors: AnchorTuple, *, tol: float = DEFAULT_TOL) -> float:
    """
    Standard n-norm ||x, a_2, ..., a_n|| = sqrt(<x, x | a_2, ..., a_n>), the volume of the
    parallelepiped spanned by x and the anchors.
    """

    return math.sqrt(float(gram_n_norm_squared(x, anchors, tol=tol)))


def cauchy_schwarz_gap(x: Vector, y: Vector, anchors: AnchorTuple, *, tol: float = DEFAULT_TOL) -> float:
    """
    Return ||x, A|| * ||y, A|| - |<x, y | A>|, nonnegative up to rounding.
    """

    inner = standard_n_inner(x, y, anchors)
    return gram_n_norm(x, anchors, tol=tol) * gram_n_norm(y, anchors, tol=tol) - abs(inner)
