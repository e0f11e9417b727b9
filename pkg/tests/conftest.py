"""Shared oracles: brute-force qubit-register evolution and partial traces.

These deliberately avoid the Dicke-basis code paths in the package: the
register Floquet operator is assembled from explicit Pauli strings, so it
provides an independent check of symspace/measures/exact modules.
"""

import math

import numpy as np
import pytest

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])


def register_floquet(n_qubits: int, kappa0: float, p: float = math.pi / 2) -> np.ndarray:
    """Full 2^N x 2^N kicked-top Floquet operator from the qubit picture:
    exp(-i kappa0/(4j) sum_{l<l'} sz_l sz_l') exp(-i p/2 sum_l sy_l).

    Differs from the Dicke-space convention by the global phase
    exp(+i kappa0/4) (the torsion's constant diagonal).
    """
    dim = 2**n_qubits
    zvals = np.empty(dim)
    for s in range(dim):
        bits = [(s >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]
        z = [1 - 2 * b for b in bits]
        zvals[s] = sum(z[a] * z[b] for a in range(n_qubits) for b in range(a + 1, n_qubits))
    torsion = np.exp(-1j * (kappa0 / (2.0 * n_qubits)) * zvals)
    single = np.cos(p / 2.0) * np.eye(2) - 1j * math.sin(p / 2.0) * _SY
    rotation = np.array([[1.0]])
    for _ in range(n_qubits):
        rotation = np.kron(rotation, single)
    return torsion[:, None] * rotation


def register_partial_trace(rho: np.ndarray, n_qubits: int, keep) -> np.ndarray:
    """Partial trace of a 2^N x 2^N matrix onto the kept qubits (0 = leftmost)."""
    keep = tuple(keep)
    rho = np.asarray(rho).reshape((2,) * (2 * n_qubits))
    for q in sorted((q for q in range(n_qubits) if q not in keep), reverse=True):
        rho = np.trace(rho, axis1=q, axis2=q + rho.ndim // 2)
    dim = 2 ** len(keep)
    return rho.reshape(dim, dim)


def register_reduced(vec: np.ndarray, n_qubits: int, keep) -> np.ndarray:
    return register_partial_trace(np.outer(vec, vec.conj()), n_qubits, keep)


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)


def random_symmetric_amps(rng, dim: int) -> np.ndarray:
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return amps / np.linalg.norm(amps)
