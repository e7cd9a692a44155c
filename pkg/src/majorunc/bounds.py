"""Majorant vectors and entropic lower bounds for two orthogonal measurements.

Index conventions used everywhere in this module (1-based in the formulas,
0-based in the arrays):

* the spectrum ``lambda`` is zero-padded to length ``2N``;
* ``s_0 = 0`` and ``s_j = 1`` for every ``j >= N``;
* ``W_j = 0`` for ``j > N``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import (
    ContractViolationError,
    InvalidArgumentsError,
    InvalidInputError,
    InvalidOverlapError,
    ResourceLimitError,
    UnsupportedOrderError,
)
from .linalg import check_unitary, singular_values
from .majorize import (
    ZERO_CUTOFF,
    JointDistribution,
    mutual_information,
    shannon,
    tilde_entropy,
)
from .states import Spectrum

MAX_DIMENSION = 10
S_TOL = 1e-9
TOTAL_TOL = 1e-9

# gathered entries per vectorized block in the submatrix enumeration
_BLOCK_ENTRIES = 1 << 21


@dataclass(frozen=True)
class SubCoefficients:
    """``s_k`` = largest operator norm over submatrices with ``rows + cols = k + 1``."""

    s: np.ndarray
    source_dimension: int

    def __post_init__(self):
        s = np.array(self.s, dtype=float).ravel()
        if s.size != self.source_dimension or s.size < 1:
            raise InvalidInputError("coefficient vector length must equal the dimension")
        if np.any(np.diff(s) < -S_TOL):
            raise ContractViolationError(f"coefficients are not non-decreasing: {s}")
        if np.any(s < -S_TOL) or np.any(s > 1 + S_TOL):
            raise ContractViolationError(f"coefficients outside [0, 1]: {s}")
        if abs(s[-1] - 1.0) > S_TOL:
            raise ContractViolationError(f"last coefficient must be 1, got {s[-1]!r}")
        s = np.maximum.accumulate(np.clip(s, 0.0, 1.0))
        s[-1] = 1.0
        s.setflags(write=False)
        object.__setattr__(self, "s", s)

    @property
    def c(self) -> float:
        """Largest entry modulus of the source unitary."""
        return float(self.s[0])

    def extended(self, length: int) -> np.ndarray:
        """``ext[j] = s_j`` for ``0 <= j < length`` with the padding conventions."""
        ext = np.ones(length)
        ext[0] = 0.0
        top = min(length - 1, self.source_dimension)
        ext[1 : top + 1] = self.s[:top]
        return ext


@dataclass(frozen=True)
class MajorantVector:
    values: np.ndarray
    kind: str  # "pure" ({1} ⊕ W) or "mixed" (W^(lambda))

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if self.kind not in ("pure", "mixed"):
            raise InvalidInputError(f"unknown majorant kind {self.kind!r}")
        if np.any(v < -1e-12):
            raise ContractViolationError(f"majorant has negative entries: {v}")
        v = np.clip(v, 0.0, None)
        if abs(v.sum() - 2.0) > TOTAL_TOL:
            raise ContractViolationError(f"majorant total is {v.sum():.12g}, expected 2")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size


# ---------------------------------------------------------------------------
# s_k coefficients


def _largest_norms(blocks: np.ndarray) -> np.ndarray:
    """Operator norm of each ``r x c`` matrix in a stack (..., r, c)."""
    r, c = blocks.shape[-2:]
    if r == 1 or c == 1:
        return np.sqrt(np.sum(np.abs(blocks) ** 2, axis=(-2, -1)))
    if r <= c:
        gram = blocks @ np.conj(np.swapaxes(blocks, -1, -2))
    else:
        gram = np.conj(np.swapaxes(blocks, -1, -2)) @ blocks
    if gram.shape[-1] == 2:
        a, d = gram[..., 0, 0].real, gram[..., 1, 1].real
        top = 0.5 * (a + d) + np.hypot(0.5 * (a - d), np.abs(gram[..., 0, 1]))
    else:
        top = np.linalg.eigvalsh(gram)[..., -1]
    return np.sqrt(np.clip(top, 0.0, None))


def _class_max(us: np.ndarray, r: int, c: int) -> np.ndarray:
    """Max operator norm over all r x c submatrices, for each unitary in the stack."""
    n = us.shape[-1]
    rows = np.array(list(combinations(range(n), r)))
    cols = np.array(list(combinations(range(n), c)))
    per_unitary = len(rows) * len(cols) * r * c
    chunk = max(1, _BLOCK_ENTRIES // per_unitary)
    out = np.empty(us.shape[0])
    ri = rows[:, None, :, None]
    ci = cols[None, :, None, :]
    for start in range(0, us.shape[0], chunk):
        block = us[start : start + chunk][:, ri, ci]
        out[start : start + chunk] = _largest_norms(block).reshape(block.shape[0], -1).max(axis=1)
    return out


def sub_coefficients_array(us: np.ndarray, workers: int | None = None) -> np.ndarray:
    """Raw ``s_1..s_N`` for a stack of unitaries, shape (count, N) -> (count, N).

    Exhaustive: every row subset and column subset with ``r + c <= N + 1``.
    Perimeter classes are independent, so they may be evaluated in parallel and
    combined with ``max`` (order independent, hence deterministic).
    """
    us = np.asarray(us, dtype=complex)
    n = us.shape[-1]
    shapes = [(r, c) for r in range(1, n + 1) for c in range(1, n + 2 - r)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            maxima = list(pool.map(lambda rc: _class_max(us, *rc), shapes))
    else:
        maxima = [_class_max(us, r, c) for r, c in shapes]
    s = np.zeros((us.shape[0], n))
    for (r, c), m in zip(shapes, maxima):
        k = r + c - 1
        s[:, k - 1] = np.maximum(s[:, k - 1], m)
    return s


def sub_coefficients(
    u, max_dimension: int = MAX_DIMENSION, workers: int | None = None
) -> SubCoefficients:
    u = check_unitary(u)
    n = u.shape[0]
    if n > max_dimension:
        raise ResourceLimitError(
            f"exhaustive submatrix enumeration is capped at N={max_dimension}, got N={n}"
        )
    s = sub_coefficients_array(u[None], workers=workers)[0]
    return SubCoefficients(s, n)


def w_vector(s: SubCoefficients) -> np.ndarray:
    """``W = (s_1, s_2 - s_1, ..., s_N - s_{N-1})``."""
    return np.diff(s.s, prepend=0.0)


def pure_majorant(s: SubCoefficients) -> MajorantVector:
    """``{1} ⊕ W``, the majorant for pure states."""
    return MajorantVector(np.concatenate([[1.0], w_vector(s)]), "pure")


# ---------------------------------------------------------------------------
# mixed-state majorant


def _prop_rhs_array(lam: np.ndarray, sext: np.ndarray, m: int, n: int) -> np.ndarray:
    """Proposition bound for splits m + n, arrays on the last axis (lam padded to 2N, sext to 2N)."""
    k = m + n
    out = np.zeros(lam.shape[:-1])
    for i in range(1, n + 1):
        out = out + lam[..., i - 1] * (1.0 + sext[..., k - i])
    for i in range(n + 1, m + 1):
        out = out + lam[..., i - 1]
    for i in range(1, n + 1):
        out = out + lam[..., m + i - 1] * (1.0 - sext[..., m + i - 1])
    return out


def _pad_last(a: np.ndarray, length: int, fill: float) -> np.ndarray:
    pad = np.full(a.shape[:-1] + (length - a.shape[-1],), fill)
    return np.concatenate([a, pad], axis=-1)


def _s_ext_array(s: np.ndarray, length: int) -> np.ndarray:
    zero = np.zeros(s.shape[:-1] + (1,))
    return _pad_last(np.concatenate([zero, s], axis=-1), length, 1.0)


def capital_s_array(s: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Vectorized ``S_1..S_{2N}`` for raw coefficient / spectrum arrays (..., N)."""
    n_dim = s.shape[-1]
    lam2 = _pad_last(lam, 2 * n_dim, 0.0)
    sext = _s_ext_array(s, 2 * n_dim + 1)
    out = np.empty(s.shape[:-1] + (2 * n_dim,))
    for k in range(1, 2 * n_dim + 1):
        half = k // 2
        out[..., k - 1] = _prop_rhs_array(lam2, sext, k - half, half)
    return out


def capital_s(s: SubCoefficients, lam: Spectrum) -> np.ndarray:
    """Auxiliary partial-sum bounds ``S_k`` for ``k = 1..2N``.

    ``S_k`` is the proposition bound at the balanced split ``m = ceil(k/2)``,
    ``n = floor(k/2)``; consecutive differences give ``W^(lambda)``.
    """
    _check_pair(s, lam)
    return capital_s_array(s.s, lam.padded(s.source_dimension))


def w_lambda_array(s: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Vectorized ``W^(lambda)`` (..., N) x (..., N) -> (..., 2N).

    Uses the telescoped form
    ``W_k = sum_{i < ceil(k/2)} lam_i W_{k-i} + lam_{ceil(k/2)} s_{floor(k/2)} + lam_k (1 - s_{k-1})``,
    which keeps ``W^({1,0,...})`` bit-identical to ``{1} ⊕ W``.
    """
    n_dim = s.shape[-1]
    lam2 = _pad_last(lam, 2 * n_dim, 0.0)
    sext = _s_ext_array(s, 2 * n_dim + 1)
    w = np.diff(sext, axis=-1)  # w[..., j - 1] = W_j, zero beyond N
    out = np.empty(s.shape[:-1] + (2 * n_dim,))
    for k in range(1, 2 * n_dim + 1):
        up, down = (k + 1) // 2, k // 2
        acc = np.zeros(s.shape[:-1])
        for i in range(1, up):
            acc = acc + lam2[..., i - 1] * w[..., k - i - 1]
        acc = acc + lam2[..., up - 1] * sext[..., down]
        acc = acc + lam2[..., k - 1] * (1.0 - sext[..., k - 1])
        out[..., k - 1] = acc
    return out


def w_lambda(s: SubCoefficients, lam: Spectrum) -> MajorantVector:
    _check_pair(s, lam)
    return MajorantVector(w_lambda_array(s.s, lam.padded(s.source_dimension)), "mixed")


def lambda_matrix(lam: Spectrum, n: int) -> np.ndarray:
    """The ``2n x n`` matrix with ``W^(lambda) = Lambda @ W``.

    Row ``k``, column ``j`` (1-based) holds ``lam_{ceil(k/2)}`` for
    ``j <= floor(k/2)``, ``lam_{k-j}`` for ``floor(k/2) < j < k`` and ``lam_k``
    for ``j >= k``.
    """
    vals = lam.padded(2 * n)
    out = np.empty((2 * n, n))
    for k in range(1, 2 * n + 1):
        for j in range(1, n + 1):
            if j <= k // 2:
                idx = (k + 1) // 2
            elif j < k:
                idx = k - j
            else:
                idx = k
            out[k - 1, j - 1] = vals[idx - 1]
    return out


def joint_distribution(lam: Spectrum, s: SubCoefficients) -> JointDistribution:
    """``P = Lambda diag(W) / 2``; its marginals are ``W^(lambda)/2`` and ``W``."""
    _check_pair(s, lam)
    n = s.source_dimension
    return JointDistribution.from_matrix(0.5 * lambda_matrix(lam, n) * w_vector(s)[None, :])


# ---------------------------------------------------------------------------
# entropic bounds


def conditional_bound(lam: Spectrum, s: SubCoefficients) -> float:
    """Lower bound on ``H(X|B) + H(Y|B)`` for a bipartite pure state with Schmidt vector ``lam``.

    Equal to ``2 I(P)`` for the joint distribution above, hence never negative.
    """
    return 2.0 * mutual_information(joint_distribution(lam, s))


def _majorant_values(w) -> np.ndarray:
    if isinstance(w, MajorantVector):
        return w.values
    return MajorantVector(w, "mixed").values


def _power_excess(w: np.ndarray, alpha: float) -> float:
    w = w[w > ZERO_CUTOFF]
    return float(np.sum(w * np.expm1((alpha - 1.0) * np.log(w))))


def shannon_bound(w) -> float:
    return tilde_entropy(_majorant_values(w))


def renyi_bound(w, alpha: float) -> float:
    """``ln(sum w**alpha - 1) / (1 - alpha)``; only valid for ``0 <= alpha < 1``."""
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise UnsupportedOrderError(f"Rényi bound needs 0 <= alpha < 1, got {alpha}")
    v = _majorant_values(w)
    return float(np.log1p(_power_excess(v, alpha) + v.sum() - 2.0) / (1.0 - alpha))


def tsallis_bound(w, alpha: float) -> float:
    """``(sum w**alpha - 2) / (1 - alpha)``; alpha = 1 is the Shannon bound."""
    alpha = float(alpha)
    if not alpha >= 0.0 or np.isinf(alpha):
        raise UnsupportedOrderError(f"Tsallis bound needs finite alpha >= 0, got {alpha}")
    if alpha == 1.0:
        return shannon_bound(w)
    v = _majorant_values(w)
    return (_power_excess(v, alpha) + v.sum() - 2.0) / (1.0 - alpha)


# ---------------------------------------------------------------------------
# lemma / proposition right-hand sides


def mu_vector(a, m: int, n: int, tol: float = S_TOL) -> np.ndarray:
    """``1 + (sigma(A) ⊕ -sigma(A))``, zero-padded to ``m + n`` and sorted descending.

    ``a`` is the ``n x m`` overlap block ``A_ij = <a_i|j>``.
    """
    a = np.asarray(a, dtype=complex).reshape(n, m)
    sig = singular_values(a)
    if sig[0] > 1.0 + tol:
        raise InvalidOverlapError(f"overlap block has singular value {sig[0]:.12g} > 1")
    sig = np.minimum(sig, 1.0)
    shifts = np.zeros(m + n)
    shifts[: sig.size] = sig
    shifts[sig.size : 2 * sig.size] = -sig
    return np.sort(1.0 + shifts)[::-1]


def lemma_rhs(lam: Spectrum, a, m: int, n: int) -> float:
    """Upper bound ``lam↓ · mu↓`` on ``p_1 + .. + p_m + q_1 + .. + q_n``."""
    mu = mu_vector(a, m, n)
    length = max(len(lam), mu.size)
    return float(lam.padded(length) @ np.pad(mu, (0, length - mu.size)))


def proposition_rhs(lam: Spectrum, s: SubCoefficients, m: int, n: int) -> float:
    """Lemma bound with ``sigma_i(A)`` replaced by ``s_{m+n-i}`` (needs ``n <= m <= N``)."""
    _check_pair(s, lam)
    big_n = s.source_dimension
    if n > m:
        raise InvalidArgumentsError(f"need n <= m, got m={m}, n={n}; swap the roles")
    if n < 0 or m < 1 or m > big_n:
        raise InvalidArgumentsError(f"need 0 <= n <= m <= N={big_n}, got m={m}, n={n}")
    lam2 = lam.padded(2 * big_n)
    return float(_prop_rhs_array(lam2, s.extended(2 * big_n + 1), m, n))


# ---------------------------------------------------------------------------
# comparison baselines

BASELINES = ("B_MU", "B_B", "B_directsum")
UNAVAILABLE = {
    "B_KLJR": "formula not given in the source; not implemented",
    "B_KPP": "formula not given in the source; not implemented",
}
PROVENANCE = {
    "B_MU": "Maassen-Uffink constant -2 ln c shifted by -2 H(lambda)",
    "B_B": "externally sourced: Berta et al. -2 ln c + H(A|B) with H(A|B) = -H(lambda) for a pure bipartite state",
    "B_directsum": "pure-state direct-sum bound H(W) - 2 H(lambda); the figure label for this earlier bound is ambiguous",
}


def comparison_bounds(
    lam: Spectrum,
    u,
    which: Iterable[str] = BASELINES,
    s: SubCoefficients | None = None,
) -> dict[str, float | None]:
    """Baseline lower bounds on ``H(X|B) + H(Y|B)``, each clamped at zero.

    Reserved labels ``B_KLJR`` / ``B_KPP`` map to ``None``.
    """
    which = list(which)
    unknown = [w for w in which if w not in BASELINES and w not in UNAVAILABLE]
    if unknown:
        raise InvalidArgumentsError(f"unknown baseline selector(s): {unknown}")
    if s is None:
        s = sub_coefficients(u)
    h_lam = shannon(lam.values)
    log_c = -2.0 * np.log(s.c)
    out: dict[str, float | None] = {}
    for name in which:
        if name == "B_MU":
            out[name] = max(0.0, log_c - 2.0 * h_lam)
        elif name == "B_B":
            out[name] = max(0.0, log_c - h_lam)
        elif name == "B_directsum":
            out[name] = max(0.0, shannon(w_vector(s)) - 2.0 * h_lam)
        else:
            out[name] = None
    return out


def _check_pair(s: SubCoefficients, lam: Spectrum) -> None:
    if len(lam) > s.source_dimension:
        raise InvalidArgumentsError(
            f"spectrum length {len(lam)} exceeds dimension {s.source_dimension}"
        )
