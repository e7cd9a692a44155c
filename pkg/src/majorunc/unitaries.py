"""Named unitaries and the JSON matrix file format (rows of ``[re, im]`` pairs)."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidInputError
from .linalg import check_unitary

O3 = np.array(
    [
        [np.sqrt(2), np.sqrt(2), np.sqrt(2)],
        [np.sqrt(3), 0.0, -np.sqrt(3)],
        [1.0, -2.0, 1.0],
    ]
) / np.sqrt(6)

HADAMARD2 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)


def rotation(theta: float) -> np.ndarray:
    """Real planar rotation ``((cos, sin), (-sin, cos))``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]], dtype=complex)


def fourier(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


def resolve(spec: str, dimension: int | None = None) -> np.ndarray:
    """Turn a builtin name or a JSON file path into a checked unitary.

    Builtins: ``identity[:N]``, ``fourier[:N]``, ``hadamard2``, ``o3``,
    ``rotation:<theta>``. ``identity`` and ``fourier`` without ``:N`` take
    ``dimension``.
    """
    name, _, arg = spec.partition(":")
    name = name.lower()
    if name in ("identity", "fourier"):
        n = int(arg) if arg else dimension
        if not n or n < 1:
            raise InvalidInputError(f"{name} needs a dimension, e.g. {name}:3")
        u = np.eye(n, dtype=complex) if name == "identity" else fourier(n)
    elif name == "hadamard2":
        u = HADAMARD2.astype(complex)
    elif name == "o3":
        u = O3.astype(complex)
    elif name == "rotation":
        try:
            u = rotation(float(arg))
        except ValueError as exc:
            raise InvalidInputError(f"bad rotation angle in {spec!r}") from exc
    else:
        path = Path(spec)
        if not path.exists():
            raise InvalidInputError(f"unknown unitary {spec!r} (not a builtin or a file)")
        u = load_matrix(path)
    return check_unitary(u)


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix JSON: {exc}") from exc
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise InvalidInputError("matrix JSON must be rows of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def load_matrix(path) -> np.ndarray:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_json(data)


def dump_matrix(m, path) -> None:
    # json writes floats with repr(), which round-trips bit-exactly
    Path(path).write_text(json.dumps(matrix_to_json(m)))
