"""Spectra, density matrices, measurement statistics and bipartite pure states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, InvalidInputError
from .linalg import as_matrix, check_unitary, haar_unitary, haar_unitaries, hermitian_eigenvalues

SUM_TOL = 1e-9
RENORMALIZE_TOL = 1e-6


@dataclass(frozen=True, init=False)
class Spectrum:
    """Descending probability vector (eigenvalues of a state, or a Schmidt vector)."""

    values: np.ndarray

    def __init__(self, values, renormalize: bool = False):
        arr = np.asarray(values, dtype=float).ravel()
        if arr.size == 0 or not np.all(np.isfinite(arr)):
            raise InvalidInputError("spectrum must be a non-empty finite vector")
        if np.any(arr < -1e-12):
            raise InvalidInputError(f"spectrum has negative entries: {arr}")
        arr = np.clip(arr, 0.0, None)
        total = arr.sum()
        if abs(total - 1.0) > SUM_TOL:
            if renormalize and abs(total - 1.0) <= RENORMALIZE_TOL:
                arr = arr / total
            else:
                raise InvalidInputError(f"spectrum sums to {total:.12g}, not 1")
        # stable descending sort keeps tie order
        arr = arr[np.argsort(-arr, kind="stable")]
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(length, self.values.size))
        out[: self.values.size] = self.values
        return out

    @classmethod
    def pure(cls, n: int) -> "Spectrum":
        v = np.zeros(n)
        v[0] = 1.0
        return cls(v)

    @classmethod
    def uniform(cls, n: int) -> "Spectrum":
        return cls(np.full(n, 1.0 / n))


@dataclass(frozen=True, init=False)
class DensityMatrix:
    matrix: np.ndarray

    def __init__(self, matrix, tol: float = 1e-9):
        arr = as_matrix(matrix)
        eig = hermitian_eigenvalues(arr)
        if eig[-1] < -tol:
            raise InvalidInputError(f"density matrix has negative eigenvalue {eig[-1]:.3e}")
        tr = np.trace(arr).real
        if abs(tr - 1.0) > tol:
            raise InvalidInputError(f"density matrix has trace {tr:.12g}")
        arr = 0.5 * (arr + arr.conj().T)
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self) -> Spectrum:
        eig = np.clip(hermitian_eigenvalues(self.matrix), 0.0, None)
        return Spectrum(eig / eig.sum())


@dataclass(frozen=True)
class BipartitePureState:
    schmidt: Spectrum
    dimension_A: int
    dimension_B: int

    def __post_init__(self):
        if len(self.schmidt) > min(self.dimension_A, self.dimension_B):
            raise InvalidInputError("more Schmidt coefficients than the smaller subsystem allows")

    def amplitudes(self) -> np.ndarray:
        """Coefficient matrix in Schmidt form, ``diag(sqrt(lambda))`` padded to dA x dB."""
        c = np.zeros((self.dimension_A, self.dimension_B), dtype=complex)
        k = len(self.schmidt)
        c[np.arange(k), np.arange(k)] = np.sqrt(self.schmidt.values)
        return c


def random_density_with_spectrum(spectrum: Spectrum, seed=None) -> DensityMatrix:
    """V diag(lambda) V^dagger with V Haar-random."""
    lam = spectrum.values
    v = haar_unitary(lam.size, seed)
    return DensityMatrix((v * lam) @ v.conj().T)


def random_densities(spectra: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Batched variant: one random density matrix per row of ``spectra``, shape (count, n, n)."""
    count, n = spectra.shape
    v = haar_unitaries(n, count, rng)
    return (v * spectra[:, None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def measurement_probs(rho, u="identity") -> np.ndarray:
    """Outcome probabilities of measuring ``rho`` in the basis given by the columns of ``u``.

    Entry ``i`` is ``<i|U^dagger rho U|i>``; ``u="identity"`` is the computational basis.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    if isinstance(u, str):
        if u != "identity":
            raise InvalidInputError(f"unknown basis marker {u!r}")
        p = np.diagonal(m).real.copy()
    else:
        u = check_unitary(u)
        if u.shape[0] != m.shape[0]:
            raise ContractViolationError("unitary and state dimensions differ")
        p = np.einsum("ji,jk,ki->i", u.conj(), m, u).real
    return np.clip(p, 0.0, None)


def _coefficients(amplitudes) -> np.ndarray:
    c = as_matrix(amplitudes)
    norm = np.linalg.norm(c)
    if abs(norm - 1.0) > SUM_TOL:
        raise InvalidInputError(f"bipartite state is not normalized (norm {norm:.12g})")
    return c


def schmidt_vector(amplitudes) -> Spectrum:
    """Squared singular values of the dA x dB coefficient matrix."""
    sv = np.linalg.svd(_coefficients(amplitudes), compute_uv=False)
    lam = sv**2
    return Spectrum(lam / lam.sum())


def partial_trace_A(amplitudes) -> DensityMatrix:
    """Reduced state on A: ``C C^dagger`` for coefficient matrix ``C``."""
    c = _coefficients(amplitudes)
    return DensityMatrix(c @ c.conj().T)


def random_spectrum(n: int, rng: np.random.Generator) -> Spectrum:
    """Uniform sample from the probability simplex, sorted descending."""
    e = rng.exponential(size=n)
    return Spectrum(e / e.sum())


def random_spectra(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    e = rng.exponential(size=(count, n))
    return -np.sort(-e / e.sum(axis=1, keepdims=True), axis=1)
