"""Majorization and entropy functionals.

All entropies are in nats. Entries below ``ZERO_CUTOFF`` count as exact zeros
(``0 ln 0 = 0``; they are also excluded from power sums, so ``0**0`` is 0 and
order-0 quantities count the support).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidComparisonError, InvalidInputError, UnsupportedOrderError

ZERO_CUTOFF = 1e-300
NORM_TOL = 1e-9
MAJORIZATION_SLACK = 1e-9


def _vector(x, name: str = "vector") -> np.ndarray:
    arr = np.asarray(x, dtype=float).ravel()
    if arr.size == 0:
        raise InvalidInputError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


def _probability(p, tol: float = NORM_TOL) -> np.ndarray:
    arr = _vector(p, "probability vector")
    if np.any(arr < -1e-12):
        raise InvalidInputError("probability vector has negative entries")
    if abs(arr.sum() - 1.0) > tol:
        raise InvalidInputError(f"probability vector sums to {arr.sum():.12g}, not 1")
    return np.clip(arr, 0.0, None)


def _check_order(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha >= 0:
        raise UnsupportedOrderError(f"entropy order must be >= 0, got {alpha}")
    return alpha


def _power_excess(x: np.ndarray, alpha: float) -> float:
    """sum(x**alpha - x) over the support, accurate when alpha is close to 1."""
    x = x[x > ZERO_CUTOFF]
    return float(np.sum(x * np.expm1((alpha - 1.0) * np.log(x))))


def majorizes(x, y, slack: float = MAJORIZATION_SLACK) -> bool:
    """True iff ``x`` is majorized by ``y`` (x ≺ y), up to an additive slack.

    Both vectors are sorted descending and zero-padded to a common length;
    every partial sum of ``x`` must not exceed that of ``y`` by more than
    ``slack``. Totals must agree within ``slack``.
    """
    xs = np.sort(_vector(x, "x"))[::-1]
    ys = np.sort(_vector(y, "y"))[::-1]
    if abs(xs.sum() - ys.sum()) > slack:
        raise InvalidComparisonError(
            f"totals differ: {xs.sum():.12g} vs {ys.sum():.12g}"
        )
    n = max(xs.size, ys.size)
    xs = np.pad(xs, (0, n - xs.size))
    ys = np.pad(ys, (0, n - ys.size))
    return bool(np.all(np.cumsum(xs) <= np.cumsum(ys) + slack))


def majorization_margin(x, y) -> np.ndarray:
    """Partial-sum gaps ``cumsum(y↓) - cumsum(x↓)`` (all >= 0 iff x ≺ y), batched on the last axis."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = max(x.shape[-1], y.shape[-1])
    pad = lambda a: np.concatenate(
        [a, np.zeros(a.shape[:-1] + (n - a.shape[-1],))], axis=-1
    )
    xs = -np.sort(-pad(x), axis=-1)
    ys = -np.sort(-pad(y), axis=-1)
    return np.cumsum(ys, axis=-1) - np.cumsum(xs, axis=-1)


def tilde_entropy(x) -> float:
    """``-sum x_i ln x_i`` for an arbitrary non-negative vector (no normalization)."""
    arr = _vector(x)
    if np.any(arr < -1e-12):
        raise InvalidInputError("tilde entropy needs non-negative entries")
    arr = arr[arr > ZERO_CUTOFF]
    return float(-np.sum(arr * np.log(arr)))


def shannon(p) -> float:
    return tilde_entropy(_probability(p))


def renyi(p, alpha: float) -> float:
    """Rényi entropy ``ln(sum p**alpha) / (1 - alpha)``; alpha = 1 gives Shannon."""
    alpha = _check_order(alpha)
    p = _probability(p)
    if alpha == 1.0:
        return shannon(p)
    if np.isinf(alpha):
        raise UnsupportedOrderError("infinite order is not supported")
    return float(np.log1p(_power_excess(p, alpha) + p.sum() - 1.0) / (1.0 - alpha))


def tsallis(p, alpha: float) -> float:
    alpha = _check_order(alpha)
    p = _probability(p)
    if alpha == 1.0:
        return shannon(p)
    if np.isinf(alpha):
        raise UnsupportedOrderError("infinite order is not supported")
    return (_power_excess(p, alpha) + p.sum() - 1.0) / (1.0 - alpha)


@dataclass(frozen=True)
class JointDistribution:
    """A non-negative matrix summing to one, with its row and column marginals."""

    matrix: np.ndarray
    row_marginal: np.ndarray
    col_marginal: np.ndarray

    @classmethod
    def from_matrix(cls, matrix, tol: float = NORM_TOL) -> "JointDistribution":
        m = np.array(matrix, dtype=float)
        if m.ndim != 2:
            raise InvalidInputError(f"joint distribution must be 2-D, got shape {m.shape}")
        if np.any(m < -1e-12):
            raise InvalidInputError("joint distribution has negative entries")
        if abs(m.sum() - 1.0) > tol:
            raise InvalidInputError(f"joint distribution sums to {m.sum():.12g}")
        m = np.clip(m, 0.0, None)
        m.setflags(write=False)
        rows, cols = m.sum(axis=1), m.sum(axis=0)
        rows.setflags(write=False)
        cols.setflags(write=False)
        return cls(m, rows, cols)


def mutual_information(p: JointDistribution) -> float:
    """I(P) = H(rows) + H(cols) - H(P), clamped at zero."""
    if not isinstance(p, JointDistribution):
        p = JointDistribution.from_matrix(p)
    value = (
        tilde_entropy(p.row_marginal)
        + tilde_entropy(p.col_marginal)
        - tilde_entropy(p.matrix.ravel())
    )
    return max(value, 0.0)


def to_bits(value: float) -> float:
    return value / np.log(2.0)
