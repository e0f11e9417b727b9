"""Entanglement and comparison metrics for symmetric (and general) qubit states.

Reduced density matrices of permutation-symmetric pure states are computed
from Dicke coefficients directly, which scales to hundreds of qubits; the
brute-force register partial trace is kept to the test suite as an oracle.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Iterator

import numpy as np
from scipy.special import gammaln

from .symspace import SymState, UnitaryMatrix, _two_j, trajectory

# Eigenvalues in [-PSD_CLIP_TOL, 0) are treated as exact zeros: tomography and
# round-off routinely produce tiny negatives.
PSD_CLIP_TOL = 1e-10
_X_STATE_TOL = 1e-12

_SY_SY = np.kron(
    np.array([[0.0, -1.0j], [1.0j, 0.0]]), np.array([[0.0, -1.0j], [1.0j, 0.0]])
)


def _ln_binom(n: int, k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _dicke_split_matrix(amps: np.ndarray, two_j: int, keep: int) -> np.ndarray:
    """Coefficient matrix A with rows indexed by kept-qubit patterns and columns
    by the excitation count of the remaining 2j - keep qubits; the reduced
    density matrix is A A^dagger."""
    n_rest = two_j - keep
    patterns = [(p, p.bit_count()) for p in range(2**keep)]
    a = np.zeros((2**keep, n_rest + 1), dtype=complex)
    r = np.arange(n_rest + 1)
    ln_rest = _ln_binom(n_rest, r)
    for p, w in patterns:
        ratio = np.exp(0.5 * (ln_rest - _ln_binom(two_j, r + w)))
        a[p] = amps[r + w] * ratio
    return a


def reduced_state(psi: SymState, keep: int) -> np.ndarray:
    """Reduced density matrix of `keep` qubits (1 or 2) of a symmetric state.

    By permutation symmetry any choice of kept qubits is equivalent.  Works
    directly from Dicke coefficients, so large 2j is fine.
    """
    if keep not in (1, 2):
        raise ValueError("keep must be 1 or 2")
    two_j = _two_j(psi.j)
    if two_j < keep:
        raise ValueError(f"cannot keep {keep} qubits of a {two_j}-qubit register")
    a = _dicke_split_matrix(np.asarray(psi.amps), two_j, keep)
    rho = a @ a.conj().T
    return 0.5 * (rho + rho.conj().T)


def linear_entropy(rho: np.ndarray) -> float:
    """1 - Tr(rho^2), in [0, 1 - 1/dim]."""
    rho = np.asarray(rho)
    return float(1.0 - np.einsum("ij,ji->", rho, rho).real)


def _is_x_state(rho: np.ndarray) -> bool:
    mask = np.zeros((4, 4), dtype=bool)
    idx = np.arange(4)
    mask[idx, idx] = True
    mask[idx, 3 - idx] = True
    return bool(np.max(np.abs(rho[~mask])) <= _X_STATE_TOL)


def concurrence_x_state(rho: np.ndarray) -> float:
    """Closed-form concurrence for an X-shaped two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    c1 = abs(rho[0, 3]) - math.sqrt(max(rho[1, 1].real * rho[2, 2].real, 0.0))
    c2 = abs(rho[1, 2]) - math.sqrt(max(rho[0, 0].real * rho[3, 3].real, 0.0))
    return 2.0 * max(0.0, c1, c2)


def concurrence(rho12: np.ndarray, method: str = "auto") -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Eigenvalues of (sy x sy) rho* (sy x sy) rho are sorted in decreasing order
    and combined as max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)); the
    conjugation is taken in the computational (sigma_z product) basis.  X-shaped
    inputs are routed through the closed form, which avoids the sqrt noise of
    the general path near exact zeros.
    """
    rho12 = np.asarray(rho12, dtype=complex)
    if rho12.shape != (4, 4):
        raise ValueError("concurrence expects a 4x4 density matrix")
    evals = np.linalg.eigvalsh(0.5 * (rho12 + rho12.conj().T))
    if evals.min() < -PSD_CLIP_TOL:
        raise ValueError(f"input is not positive semidefinite (min eig {evals.min():.2e})")
    if method == "auto":
        method = "x" if _is_x_state(rho12) else "general"
    if method == "x":
        return concurrence_x_state(rho12)
    if method != "general":
        raise ValueError(f"unknown method {method!r}")
    # sqrt(lam_i) of rho rho_tilde are the singular values of
    # sqrt(rho_tilde) sqrt(rho): the same spectrum without the catastrophic
    # sqrt of near-zero eigenvalues (exact-rank-deficient inputs stay exact
    # thanks to the numerical-rank clip inside the matrix square roots).
    root = _psd_sqrt(rho12, rank_clip=True)
    root_tilde = _SY_SY @ root.conj() @ _SY_SY
    sigma = np.linalg.svd(root_tilde @ root, compute_uv=False)
    return max(0.0, 2.0 * sigma[0] - sigma.sum())


def _psd_sqrt(rho: np.ndarray, rank_clip: bool = False) -> np.ndarray:
    evals, evecs = np.linalg.eigh(rho)
    evals = np.clip(evals, 0.0, None)
    if rank_clip:
        # Eigenvalues at round-off scale are true zeros of a rank-deficient
        # state; zeroing them keeps sqrt() from turning 1e-16 into 1e-8.
        evals[evals < 16.0 * np.finfo(float).eps * evals.max()] = 0.0
    return (evecs * np.sqrt(evals)) @ evecs.conj().T


def fidelity(rho_t: np.ndarray, rho_e: np.ndarray) -> float:
    """Uhlmann fidelity Tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)) in [0, 1]."""
    rho_t = np.asarray(rho_t, dtype=complex)
    rho_e = np.asarray(rho_e, dtype=complex)
    if rho_t.shape != rho_e.shape:
        raise ValueError("density matrices must have equal dimension")
    root = _psd_sqrt(rho_t)
    inner = root @ rho_e @ root
    evals = np.clip(np.linalg.eigvalsh(0.5 * (inner + inner.conj().T)), 0.0, None)
    if evals.max() > 0.0:
        evals[evals < 16.0 * np.finfo(float).eps * evals.max()] = 0.0
    return float(min(1.0, np.sum(np.sqrt(evals))))


def time_average(series: np.ndarray, count: int | None = None) -> float:
    """Arithmetic mean of the first `count` entries (all of them by default)."""
    series = np.asarray(series, dtype=float)
    if count is None:
        count = series.size
    if count < 1 or series.size < count:
        raise ValueError("need at least one entry to average")
    return float(series[:count].mean())


def streaming_average(
    values: Iterable[float] | Iterator[float],
    count: int,
    index_filter: Callable[[int], bool] | None = None,
) -> float:
    """Mean of the first `count` generated values, O(1) memory.

    `index_filter(n)` selects which indices enter the average (n starts at 0);
    this is how even-time subsequences are averaged where step-wise dynamics
    repeats values at odd times.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    total = 0.0
    used = 0
    it = iter(values)
    for n in range(count):
        value = next(it)
        if index_filter is None or index_filter(n):
            total += value
            used += 1
    if used == 0:
        raise ValueError("index filter selected no entries")
    return total / used


def rmt_average(n_qubits: int) -> float:
    """Ensemble-mean single-qubit linear entropy (N-1)/2N of Haar-random
    permutation-symmetric N-qubit states."""
    if n_qubits < 2:
        raise ValueError("need at least 2 qubits")
    return (n_qubits - 1) / (2.0 * n_qubits)


def haar_symmetric_sample(j: float, count: int, seed: int) -> float:
    """Monte-Carlo mean single-qubit linear entropy over Haar-random states of
    the (2j+1)-dimensional symmetric subspace.  Deterministic given seed."""
    if count < 1:
        raise ValueError("count must be >= 1")
    two_j = _two_j(j)
    dim = two_j + 1
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    k = np.arange(dim)
    w_up = (two_j - k) / two_j
    od_w = np.sqrt((two_j - k[:-1]) * (k[:-1] + 1)) / two_j
    prob = np.abs(psi) ** 2
    r = prob @ w_up
    off = np.einsum("sk,k,sk->s", psi[:, :-1], od_w, psi[:, 1:].conj())
    purity = r**2 + (1.0 - r) ** 2 + 2.0 * np.abs(off) ** 2
    return float(np.mean(1.0 - purity))


def entanglement_series(
    u: UnitaryMatrix, psi0: SymState, n_max: int
) -> tuple[np.ndarray, np.ndarray]:
    """Numeric (linear entropy, pairwise concurrence) series for n = 0..n_max."""
    states = trajectory(u, psi0, n_max)
    two_j = _two_j(psi0.j)
    entropies = np.empty(n_max + 1)
    concurrences = np.full(n_max + 1, np.nan)
    for n in range(n_max + 1):
        psi = SymState(psi0.j, states[n])
        entropies[n] = linear_entropy(reduced_state(psi, 1))
        if two_j >= 2:
            concurrences[n] = concurrence(reduced_state(psi, 2))
    return entropies, concurrences
