"""Data behind the qubit sweeps and the qutrit simplex plots."""

from __future__ import annotations

import numpy as np

from .bounds import comparison_bounds, conditional_bound, sub_coefficients
from .errors import InvalidArgumentsError
from .linalg import check_unitary
from .states import Spectrum
from .unitaries import rotation

QUBIT_COLUMNS = ("x", "B_PRKZ", "B_B", "B_MU", "B_directsum")
QUTRIT_COLUMNS = ("λ1", "λ2", "λ3", "B_PRKZ", "B_B", "B_directsum")


def bound_row(lam: Spectrum, u, s=None) -> dict[str, float]:
    """All implemented conditional bounds for one (spectrum, unitary), clamped at zero."""
    if s is None:
        s = sub_coefficients(u)
    row = {"B_PRKZ": max(0.0, conditional_bound(lam, s))}
    row.update(comparison_bounds(lam, u, s=s))
    return row


def grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 2 or not hi > lo:
        raise InvalidArgumentsError(f"degenerate grid ({lo}, {hi}, {steps})")
    return np.linspace(lo, hi, steps)


def qubit_sweep(mode: str, fixed: float, xs) -> list[dict[str, float]]:
    """Rows for the qubit plots.

    ``mode="theta"``: x is the rotation angle, ``fixed`` the smaller eigenvalue.
    ``mode="lambda"``: x is the smaller eigenvalue, ``fixed`` the angle.
    """
    if mode not in ("theta", "lambda"):
        raise InvalidArgumentsError(f"mode must be 'theta' or 'lambda', got {mode!r}")
    xs = np.asarray(xs, dtype=float)
    small = np.array([fixed]) if mode == "theta" else xs
    if np.any(small < 0) or np.any(small > 0.5):
        raise InvalidArgumentsError("the smaller eigenvalue must lie in [0, 1/2]")
    rows = []
    fixed_s = None
    if mode == "lambda":
        u = rotation(fixed)
        fixed_s = sub_coefficients(u)
    for x in xs:
        if mode == "theta":
            u, lam = rotation(x), Spectrum([1 - fixed, fixed])
            s = sub_coefficients(u)
        else:
            u, lam, s = rotation(fixed), Spectrum([1 - x, x]), fixed_s
        rows.append({"x": float(x), **bound_row(lam, u, s)})
    return rows


def ordered_simplex(resolution: int) -> np.ndarray:
    """Barycentric grid points ``(i, j, k) / resolution`` with ``i >= j >= k``."""
    if resolution < 2:
        raise InvalidArgumentsError(f"resolution must be >= 2, got {resolution}")
    pts = [
        (i, j, resolution - i - j)
        for i in range(resolution + 1)
        for j in range(resolution + 1 - i)
        if i >= j >= resolution - i - j
    ]
    return np.array(pts, dtype=float) / resolution


def qutrit_simplex(u, resolution: int) -> list[dict[str, float]]:
    u = check_unitary(u)
    if u.shape != (3, 3):
        raise InvalidArgumentsError(f"qutrit simplex needs a 3x3 unitary, got {u.shape}")
    s = sub_coefficients(u)
    rows = []
    for lam in ordered_simplex(resolution):
        b = bound_row(Spectrum(lam), u, s)
        rows.append({
            "λ1": lam[0], "λ2": lam[1], "λ3": lam[2],
            "B_PRKZ": b["B_PRKZ"], "B_B": b["B_B"], "B_directsum": b["B_directsum"],
        })
    return rows


def dominance_threshold(rows, baselines=("B_B", "B_MU", "B_directsum")) -> float | None:
    """Largest x such that B_PRKZ strictly beats every baseline on all rows with 0 < x' <= x."""
    best = None
    for row in sorted(rows, key=lambda r: r["x"]):
        if row["x"] <= 0:
            continue
        if all(row["B_PRKZ"] > row[b] for b in baselines):
            best = row["x"]
        else:
            break
    return best
