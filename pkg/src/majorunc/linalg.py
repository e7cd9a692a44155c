"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; the helpers here
only add validation and a fixed ordering convention (descending) on top of
``numpy.linalg``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import ContractViolationError, InvalidInputError

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array, raising InvalidInputError otherwise."""
    try:
        arr = np.array(m, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"not a numeric matrix: {exc}") from exc
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInputError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("matrix has non-finite entries")
    return arr


def singular_values(m) -> np.ndarray:
    """Singular values in descending order; the first one is the operator norm."""
    arr = as_matrix(m)
    return np.linalg.svd(arr, compute_uv=False)


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ContractViolationError(f"matrix is not square: {arr.shape}")
    dev = np.max(np.abs(arr - arr.conj().T))
    if dev > tol:
        raise ContractViolationError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return np.linalg.eigvalsh(0.5 * (arr + arr.conj().T))[::-1]


def unitarity_defect(u) -> float:
    """max |U^dagger U - I| entrywise."""
    arr = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(arr.conj().T @ arr - np.eye(arr.shape[1]))))


def check_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    arr = as_matrix(u)
    if arr.shape[0] != arr.shape[1]:
        raise ContractViolationError(f"unitary must be square, got {arr.shape}")
    dev = unitarity_defect(arr)
    if dev > tol:
        raise ContractViolationError(f"matrix is not unitary (defect {dev:.3e})")
    return arr


def haar_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary.

    QR of a complex Ginibre matrix, with the columns of Q rephased so that the
    diagonal of R is positive. ``seed`` may be an int or a ``numpy`` Generator.
    """
    if int(n) < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {n}")
    return haar_unitaries(int(n), 1, seed)[0]


def haar_unitaries(n: int, count: int, seed=None) -> np.ndarray:
    """A stack of ``count`` independent Haar unitaries, shape ``(count, n, n)``."""
    if n < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phases = d / np.abs(d)
    return q * phases[:, None, :]


def submatrix(m, row_indices: Sequence[int], col_indices: Sequence[int]) -> np.ndarray:
    arr = as_matrix(m)
    rows = _check_indices(row_indices, arr.shape[0], "row")
    cols = _check_indices(col_indices, arr.shape[1], "column")
    return arr[np.ix_(rows, cols)].copy()


def _check_indices(idx, size: int, what: str) -> list[int]:
    idx = [int(i) for i in idx]
    if not idx:
        raise InvalidInputError(f"empty {what} index set")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise InvalidInputError(f"{what} indices must be strictly increasing: {idx}")
    if idx[0] < 0 or idx[-1] >= size:
        raise InvalidInputError(f"{what} index out of range for size {size}: {idx}")
    return idx
