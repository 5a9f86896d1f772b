"""Dense linear algebra shared by both arithmetic modes.

Approximate arrays go through numpy.linalg; exact arrays (object dtype holding
ComplexScalar) go through fraction-exact Gaussian elimination.
"""

import math
import numpy as np

from typing import Sequence

from ..errors import NonInvertibleError
from .scalar import ONE, ZERO, abs2, is_exact


def _rows(matrix: np.ndarray) -> list[list]:
    return [list(row) for row in matrix]


def _eliminate(rows: list[list], *, reduce: bool) -> tuple[list[list], list[int], int]:
    """
    Exact row reduction in place.

    :return: reduced rows, pivot columns, number of row swaps
    """

    n_rows, n_cols = len(rows), len(rows[0]) if rows else 0
    pivots, swaps, r = [], 0, 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            swaps += 1
        lead = rows[r][c]
        if reduce:
            rows[r] = [v / lead for v in rows[r]]
            lead = ONE
        targets = range(n_rows) if reduce else range(r + 1, n_rows)
        for i in targets:
            if i == r or not rows[i][c]:
                continue
            factor = rows[i][c] / lead
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots, swaps


def determinant(matrix: np.ndarray):
    n = matrix.shape[0]
    assert matrix.shape == (n, n), "determinant of a non-square matrix"
    if n == 0:
        return ONE if is_exact(matrix) else 1.0 + 0j
    if not is_exact(matrix):
        return complex(np.linalg.det(matrix))

    rows, pivots, swaps = _eliminate(_rows(matrix), reduce=False)
    if len(pivots) < n:
        return ZERO
    det = ONE
    for i in range(n):
        det = det * rows[i][i]
    return -det if swaps % 2 else det


def rank(matrix: np.ndarray, tol: float = 1e-9) -> int:
    if matrix.size == 0:
        return 0
    if is_exact(matrix):
        return len(_eliminate(_rows(matrix), reduce=False)[1])
    singular = np.linalg.svd(matrix, compute_uv=False)
    return int((singular > tol * max(1.0, singular[0])).sum())


def inverse(matrix: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """
    Invert a square matrix.

    :raises NonInvertibleError: singular (exactly, or to relative tolerance ``tol``)
    """

    n = matrix.shape[0]
    if is_exact(matrix):
        augmented = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(_rows(matrix))]
        rows, pivots, _ = _eliminate(augmented, reduce=True)
        if pivots[:n] != list(range(n)):
            raise NonInvertibleError("matrix is singular", witness={'rank': sum(p < n for p in pivots)})
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            out[i] = rows[i][n:]
        return out

    singular = np.linalg.svd(matrix, compute_uv=False)
    if singular[-1] <= tol * max(1.0, singular[0]):
        raise NonInvertibleError(
            "matrix is numerically singular",
            witness={'smallest_singular_value': float(singular[-1])},
        )
    return np.linalg.inv(matrix)


def null_vector(matrix: np.ndarray) -> np.ndarray:
    """
    Return a kernel vector of a square matrix (exact kernel in exact mode, smallest right singular vector otherwise).
    """

    n = matrix.shape[1]
    if not is_exact(matrix):
        _, _, vh = np.linalg.svd(matrix)
        return np.conj(vh[-1])

    rows, pivots, _ = _eliminate(_rows(matrix), reduce=True)
    free = next((c for c in range(n) if c not in pivots), None)
    if free is None:
        raise NonInvertibleError("matrix has a trivial kernel")
    out = np.full(n, ZERO, dtype=object)
    out[free] = ONE
    for r, c in enumerate(pivots):
        out[c] = -rows[r][free]
    return out


def gram_matrix(rows: np.ndarray) -> np.ndarray:
    """Matrix of Hermitian inner products <row_i, row_j> = sum_k row_i[k] * conj(row_j[k])."""

    return rows @ np.conj(rows).T


def is_dependent(vectors: Sequence[np.ndarray], tol: float = 1e-9) -> bool:
    """
    Decide linear dependence of flattened coordinate vectors.

    Exact arrays are decided by exact rank. Approximate arrays use the scale-free
    Gram test det(G) <= tol * prod |v_i|^2 (Hadamard's inequality bounds the ratio by 1).
    """

    rows = np.stack([np.ravel(v) for v in vectors])
    if is_exact(rows):
        return rank(rows) < len(vectors)

    lengths = [float(np.vdot(v, v).real) for v in rows]
    if min(lengths) == 0.0:
        return True
    det = determinant(gram_matrix(rows)).real
    return det <= tol * math.prod(lengths)


def spectral_norm(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(np.asarray(matrix, dtype=np.complex128), 2))


def vector_length(v: np.ndarray) -> float:
    return math.sqrt(float(sum(abs2(x) for x in np.ravel(v))))
