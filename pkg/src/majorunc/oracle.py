"""Brute-force verification of the majorization and entropy inequalities.

Each ``verify_*`` function samples (or enumerates) instances, evaluates the
claimed inequality or identity, and returns a :class:`VerificationReport`.
A trial is a violation when its excess (``lhs - rhs`` for an inequality,
``|lhs - rhs|`` for an identity) is larger than the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import bounds as B
from .errors import InvalidArgumentsError, ResourceLimitError
from .linalg import check_unitary, haar_unitaries, hermitian_eigenvalues
from .majorize import (
    majorization_margin,
    mutual_information,
    renyi,
    shannon,
    tilde_entropy,
    tsallis,
)
from .states import Spectrum, random_densities, random_spectra

SLACK = 1e-9
CHUNK = 2000


@dataclass
class VerificationReport:
    claim_id: str
    trials: int = 0
    violations: int = 0
    worst_slack: float = -np.inf
    seed: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, excess, tol: float) -> None:
        excess = np.atleast_1d(np.asarray(excess, dtype=float))
        if excess.size == 0:
            return
        self.trials += excess.size
        self.violations += int(np.count_nonzero(excess > tol))
        self.worst_slack = max(self.worst_slack, float(excess.max()))

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "trials": self.trials,
            "violations": self.violations,
            "worst_slack": None if np.isinf(self.worst_slack) else self.worst_slack,
            "seed": self.seed,
            **({"notes": self.notes} if self.notes else {}),
        }


def combine(claim_id: str, reports) -> VerificationReport:
    """Associative merge of reports (sums counts, keeps the worst excess)."""
    out = VerificationReport(claim_id)
    for r in reports:
        out.trials += r.trials
        out.violations += r.violations
        out.worst_slack = max(out.worst_slack, r.worst_slack)
    return out


def _check_dim(n: int, cap: int = B.MAX_DIMENSION) -> None:
    if n > cap:
        raise ResourceLimitError(f"dimension {n} exceeds the enumeration cap {cap}")
    if n < 2:
        raise InvalidArgumentsError(f"dimension must be >= 2, got {n}")


def _sample(n, count, rng, unitary=None, spectrum=None):
    if unitary is None:
        us = haar_unitaries(n, count, rng)
    else:
        us = np.broadcast_to(check_unitary(unitary), (count, n, n))
    if spectrum is None:
        lams = random_spectra(n, count, rng)
    else:
        lams = np.broadcast_to(spectrum.padded(n), (count, n))
    rhos = random_densities(lams, rng)
    p = np.real(np.diagonal(rhos, axis1=-2, axis2=-1))
    q = np.real(np.einsum("tji,tjk,tki->ti", us.conj(), rhos, us))
    return us, lams, np.clip(p, 0, None), np.clip(q, 0, None)


def verify_majorization(
    n: int,
    trials: int,
    seed: int = 0,
    unitary=None,
    spectrum: Spectrum | None = None,
    tol: float = SLACK,
) -> VerificationReport:
    """Check ``p ⊕ q ≺ W^(lambda)`` on random (U, lambda, rho) triples.

    ``unitary`` / ``spectrum`` pin those parts of the sample. The note
    ``tightest_margin`` is the smallest proper partial-sum gap seen.
    """
    _check_dim(n)
    rng = np.random.default_rng(seed)
    report = VerificationReport("majorization", seed=seed)
    tightest = np.inf
    fixed_s = None
    if unitary is not None:
        fixed_s = B.sub_coefficients(unitary).s
    for start in range(0, trials, CHUNK):
        count = min(CHUNK, trials - start)
        us, lams, p, q = _sample(n, count, rng, unitary, spectrum)
        s = np.broadcast_to(fixed_s, (count, n)) if fixed_s is not None else B.sub_coefficients_array(us)
        wl = B.w_lambda_array(s, lams)
        margin = majorization_margin(np.concatenate([p, q], axis=1), wl)
        report.record(-margin.min(axis=1), tol)
        tightest = min(tightest, float(margin[:, :-1].min()))
    report.notes["tightest_margin"] = tightest
    return report


def verify_entropic_bounds(n: int, trials: int, seed: int = 0, tol: float = SLACK) -> VerificationReport:
    """Entropy sums of the two measurements against the Shannon/Rényi/Tsallis bounds."""
    _check_dim(n)
    rng = np.random.default_rng(seed)
    parts = {
        "shannon": VerificationReport("shannon"),
        **{f"renyi:{a}": VerificationReport(f"renyi:{a}") for a in (0.1, 0.5, 0.9)},
        **{f"tsallis:{a}": VerificationReport(f"tsallis:{a}") for a in (0.5, 2.0, 3.0)},
    }
    for start in range(0, trials, CHUNK):
        count = min(CHUNK, trials - start)
        us, lams, p, q = _sample(n, count, rng)
        wl = B.w_lambda_array(B.sub_coefficients_array(us), lams)
        for t in range(count):
            w = B.MajorantVector(wl[t], "mixed")
            pt, qt = p[t] / p[t].sum(), q[t] / q[t].sum()
            parts["shannon"].record(B.shannon_bound(w) - shannon(pt) - shannon(qt), tol)
            for a in (0.1, 0.5, 0.9):
                parts[f"renyi:{a}"].record(B.renyi_bound(w, a) - renyi(pt, a) - renyi(qt, a), tol)
            for a in (0.5, 2.0, 3.0):
                parts[f"tsallis:{a}"].record(B.tsallis_bound(w, a) - tsallis(pt, a) - tsallis(qt, a), tol)
    report = combine("entropic_bounds", parts.values())
    report.seed = seed
    report.notes = {k: v.to_dict() for k, v in parts.items()}
    return report


def verify_lemma(n: int, trials: int, seed: int = 0, tol: float = SLACK) -> VerificationReport:
    """Scalar-product bound and the eigenvalue identity behind it, on random instances.

    Per trial: a Haar basis pair, random subsets of sizes ``m`` and ``n'``, a
    random state. Checks the partial-sum bound, that the Gram matrix of the
    chosen vectors has eigenvalues ``1 ± sigma(A)`` (zero-padded), and that the
    nonzero spectrum of the summed projector matches.
    """
    _check_dim(n)
    rng = np.random.default_rng(seed)
    bound = VerificationReport("lemma_bound")
    gram = VerificationReport("lemma_gram_eigs")
    proj = VerificationReport("lemma_projector_eigs")
    for start in range(0, trials, CHUNK):
        count = min(CHUNK, trials - start)
        us, lams, p, q = _sample(n, count, rng)
        for t in range(count):
            m_size = int(rng.integers(1, n + 1))
            n_size = int(rng.integers(1, n + 1))
            rows = np.sort(rng.choice(n, m_size, replace=False))
            cols = np.sort(rng.choice(n, n_size, replace=False))
            lam = Spectrum(lams[t])
            a = us[t][np.ix_(rows, cols)].conj().T
            mu = B.mu_vector(a, m_size, n_size)
            lhs = p[t, rows].sum() + q[t, cols].sum()
            bound.record(lhs - B.lemma_rhs(lam, a, m_size, n_size), tol)

            c = np.vstack([np.eye(n)[rows], us[t][:, cols].conj().T])
            cc = hermitian_eigenvalues(c @ c.conj().T, tol=1e-9)
            gram.record(np.max(np.abs(cc - mu)), tol)

            eig_m = hermitian_eigenvalues(c.conj().T @ c, tol=1e-9)
            length = max(n, mu.size)
            diff = np.pad(eig_m, (0, length - n)) - np.pad(mu, (0, length - mu.size))
            proj.record(np.max(np.abs(diff)), tol)
    report = combine("lemma", [bound, gram, proj])
    report.seed = seed
    report.notes = {r.claim_id: r.to_dict() for r in (bound, gram, proj)}
    return report


def _projector_sum(u: np.ndarray, first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """``sum_{i in first} |i><i| + sum_{j in second} |u_j><u_j|`` for 0/1 indicator arrays (..., N)."""
    diag = np.einsum("...i,ij->...ij", first.astype(float), np.eye(u.shape[0]))
    return diag + np.einsum("ij,...j,kj->...ik", u, second.astype(float), u.conj())


def exact_partial_sum_max(lam: Spectrum, basis_one_subset, basis_two_subset, u) -> float:
    """Exact maximum of ``sum_{i in S1} p_i + sum_{j in S2} q_j`` over states with spectrum ``lam``.

    By von Neumann's trace inequality this is ``lam↓ · eig(M)↓`` where ``M`` sums
    the projectors onto the selected vectors of both bases (second basis = columns of ``u``).
    """
    u = check_unitary(u)
    n = u.shape[0]
    first = np.zeros(n)
    second = np.zeros(n)
    first[list(basis_one_subset)] = 1
    second[list(basis_two_subset)] = 1
    if not first.any() and not second.any():
        raise InvalidArgumentsError("at least one subset must be non-empty")
    eig = hermitian_eigenvalues(_projector_sum(u, first, second))
    return float(lam.padded(n) @ eig)


def maximizing_state(lam: Spectrum, basis_one_subset, basis_two_subset, u) -> np.ndarray:
    """A state with spectrum ``lam`` attaining :func:`exact_partial_sum_max`."""
    u = check_unitary(u)
    n = u.shape[0]
    first = np.zeros(n)
    second = np.zeros(n)
    first[list(basis_one_subset)] = 1
    second[list(basis_two_subset)] = 1
    _, vecs = np.linalg.eigh(_projector_sum(u, first, second))
    vecs = vecs[:, ::-1]
    return (vecs * lam.padded(n)) @ vecs.conj().T


def verify_tightness_ladder(u, lam: Spectrum, tol: float = 1e-10) -> VerificationReport:
    """Exhaustive ladder ``exact max <= proposition bound <= S_{m+n}`` over all subset pairs.

    Also checks, for every ``k``, that among the splits ``m + n = k`` the
    balanced one (``n = floor(k/2)``) gives the largest proposition bound and
    reproduces ``S_k``. Notes carry the individual counts.
    """
    u = check_unitary(u)
    n = u.shape[0]
    _check_dim(n, cap=B.MAX_DIMENSION)
    s = B.sub_coefficients(u)
    big_s = B.capital_s(s, lam)
    prop = np.full((n + 1, n + 1), np.nan)
    for m in range(1, n + 1):
        for k in range(0, m + 1):
            prop[m, k] = B.proposition_rhs(lam, s, m, k)

    masks = np.array(list(product((0, 1), repeat=n)), dtype=int)
    first = np.repeat(masks, len(masks), axis=0)
    second = np.tile(masks, (len(masks), 1))
    keep = (first.sum(1) + second.sum(1)) > 0
    first, second = first[keep], second[keep]
    eig = np.linalg.eigvalsh(_projector_sum(u, first, second))[:, ::-1]
    exact = eig @ lam.padded(n)
    m_sz, n_sz = first.sum(1), second.sum(1)
    big, small = np.maximum(m_sz, n_sz), np.minimum(m_sz, n_sz)
    prop_vals = prop[big, small]
    s_vals = big_s[m_sz + n_sz - 1]

    lower = VerificationReport("exact_le_proposition")
    lower.record(exact - prop_vals, tol)
    upper = VerificationReport("proposition_le_S")
    upper.record(prop_vals - s_vals, tol)
    split = VerificationReport("balanced_split_maximal")
    for k in range(1, 2 * n + 1):
        splits = [(k - j, j) for j in range(0, k // 2 + 1) if k - j <= n]
        values = np.array([prop[m, j] for m, j in splits])
        balanced = prop[k - k // 2, k // 2]
        split.record(max(values.max() - balanced, abs(balanced - big_s[k - 1])), tol)
    report = combine("tightness_ladder", [lower, upper, split])
    report.notes = {r.claim_id: r.to_dict() for r in (lower, upper, split)}
    return report


def verify_identities(lam: Spectrum, s: B.SubCoefficients, tol: float = SLACK) -> VerificationReport:
    """Entropy and structure identities of the joint distribution ``P``."""
    n = s.source_dimension
    w = B.w_vector(s)
    wl = B.w_lambda(s, lam).values
    joint = B.joint_distribution(lam, s)
    h_lam, h_w = shannon(lam.values), shannon(w)
    mi = mutual_information(joint)
    report = VerificationReport("identities")
    checks = {
        "entropy_of_P": (abs(tilde_entropy(joint.matrix.ravel()) - (h_lam + h_w + np.log(2))), tol),
        "tilde_H_split": (abs(tilde_entropy(wl) - (2 * mi + 2 * h_lam)), tol),
        "lambda_matrix": (np.max(np.abs(B.lambda_matrix(lam, n) @ w - wl)), 1e-10),
        "S_differences": (np.max(np.abs(np.diff(B.capital_s(s, lam), prepend=0.0) - wl)), 1e-10),
        "row_marginal": (np.max(np.abs(joint.row_marginal - wl / 2)), 1e-10),
        "col_marginal": (np.max(np.abs(joint.col_marginal - w)), 1e-10),
        "tensor_multiset": (
            np.max(np.abs(
                np.sort(joint.matrix.ravel())
                - np.sort(0.5 * np.tile(np.outer(lam.padded(n), w).ravel(), 2))
            )),
            1e-12,
        ),
    }
    for name, (excess, t) in checks.items():
        report.record(excess, t)
        report.notes[name] = float(excess)
    return report


def random_sub_coefficients(n: int, rng: np.random.Generator) -> B.SubCoefficients:
    """Any non-decreasing vector in [0, 1] ending at 1 is admissible for the identities."""
    s = np.sort(rng.uniform(0, 1, n))
    s[-1] = 1.0
    return B.SubCoefficients(s, n)


def verify_identities_random(n: int, trials: int, seed: int = 0) -> VerificationReport:
    _check_dim(n)
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(trials):
        lam = Spectrum(random_spectra(n, 1, rng)[0])
        reports.append(verify_identities(lam, random_sub_coefficients(n, rng)))
    out = combine("identities", reports)
    out.seed = seed
    return out


def verify_convexity(u, trials: int, seed: int = 0, tol: float = SLACK) -> VerificationReport:
    """Midpoint convexity of the conditional bound along random segments of ordered spectra."""
    u = check_unitary(u)
    n = u.shape[0]
    s = B.sub_coefficients(u)
    rng = np.random.default_rng(seed)
    report = VerificationReport("convexity", seed=seed)
    for _ in range(trials):
        la, lb = random_spectra(n, 2, rng)
        mid = Spectrum(0.5 * (la + lb))
        ends = 0.5 * (B.conditional_bound(Spectrum(la), s) + B.conditional_bound(Spectrum(lb), s))
        report.record(B.conditional_bound(mid, s) - ends, tol)
    return report


def verify_qubit_extras(trials: int, seed: int = 0, tol: float = SLACK) -> VerificationReport:
    """For N = 2: ``s_1 >= 1/sqrt(2)`` and ``W^(lambda) ≺ W ⊕ lambda``."""
    rng = np.random.default_rng(seed)
    us = haar_unitaries(2, trials, rng)
    s = B.sub_coefficients_array(us)
    lams = random_spectra(2, trials, rng)
    floor = VerificationReport("s1_floor")
    floor.record(1 / np.sqrt(2) - s[:, 0], tol)
    major = VerificationReport("w_lambda_below_w_plus_lambda")
    wl = B.w_lambda_array(s, lams)
    w = np.diff(s, axis=1, prepend=0.0)
    margin = majorization_margin(wl, np.concatenate([w, lams], axis=1))
    major.record(-margin.min(axis=1), tol)
    report = combine("qubit_extras", [floor, major])
    report.seed = seed
    report.notes = {r.claim_id: r.to_dict() for r in (floor, major)}
    return report


SUITES = ("majorization", "lemma", "identities", "ladder", "all")


def run_suite(
    suite: str, n: int, trials: int, seed: int = 0, tol: float = SLACK
) -> list[VerificationReport]:
    """Dispatch used by the CLI ``verify`` command."""
    if suite not in SUITES:
        raise InvalidArgumentsError(f"unknown suite {suite!r}; choose from {SUITES}")
    _check_dim(n)
    chosen = SUITES[:-1] if suite == "all" else (suite,)
    out = []
    for name in chosen:
        if name == "majorization":
            out.append(verify_majorization(n, trials, seed, tol=tol))
        elif name == "lemma":
            out.append(verify_lemma(n, trials, seed, tol=tol))
        elif name == "identities":
            out.append(verify_identities_random(n, trials, seed))
        elif name == "ladder":
            rng = np.random.default_rng(seed)
            reps = []
            # the ladder is exhaustive per instance, so use only a few instances
            for _ in range(max(1, min(trials, 5))):
                u = haar_unitaries(n, 1, rng)[0]
                reps.append(verify_tightness_ladder(u, Spectrum(random_spectra(n, 1, rng)[0])))
            rep = combine("tightness_ladder", reps)
            rep.seed = seed
            out.append(rep)
    return out
