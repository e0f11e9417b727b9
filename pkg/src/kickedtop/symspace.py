"""Spin-j kicked top engine on the permutation-symmetric (Dicke) subspace.

One kick period is a rotation by angle p about the y axis followed by a
torsion exp(-i kappa0 Jz^2 / 2j); the Floquet operator of that period acts on
the (2j+1)-dimensional symmetric subspace of 2j qubits.

Basis convention used everywhere in this package: amplitude index i holds the
Jz eigenvalue m = j - i, i.e. amplitudes run m = j, j-1, ..., -j.  In the
qubit picture index i is the normalized symmetric superposition of the
computational strings with exactly i ones, so index 0 is |00...0>.  Units are
hbar = 1 and kick period tau = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_HALF_INT_TOL = 1e-9
_STATE_NORM_TOL = 1e-7  # loose: evolved states are allowed monitored drift
_UNITARY_TOL = 1e-10
QUBIT_EXPANSION_LIMIT = 14  # largest 2j for which full-register expansion is allowed


def _two_j(j: float) -> int:
    """Validate j as a half-integer >= 1/2 and return 2j as an int."""
    two_j = 2.0 * j
    if not math.isfinite(two_j) or abs(two_j - round(two_j)) > _HALF_INT_TOL:
        raise ValueError(f"j must be a half-integer, got {j!r}")
    two_j = round(two_j)
    if two_j < 1:
        raise ValueError(f"j must be >= 1/2, got {j!r}")
    return two_j


@dataclass(frozen=True)
class KickedTopParams:
    """System configuration: spin j, torsion strength kappa0, rotation angle p."""

    j: float
    kappa0: float
    p: float = math.pi / 2

    def __post_init__(self):
        _two_j(self.j)
        if not math.isfinite(self.kappa0):
            raise ValueError("kappa0 must be finite")
        if not math.isfinite(self.p):
            raise ValueError("p must be finite")

    @property
    def dim(self) -> int:
        return _two_j(self.j) + 1

    @property
    def n_qubits(self) -> int:
        return _two_j(self.j)


@dataclass(frozen=True)
class BlochPoint:
    """Direction (theta0, phi0) on the unit sphere, theta0 in [0, pi], phi0 in [-pi, pi]."""

    theta0: float
    phi0: float

    def __post_init__(self):
        if not (math.isfinite(self.theta0) and math.isfinite(self.phi0)):
            raise ValueError("angles must be finite")
        if not 0.0 <= self.theta0 <= math.pi:
            raise ValueError(f"theta0 must lie in [0, pi], got {self.theta0!r}")
        if not -math.pi <= self.phi0 <= math.pi:
            raise ValueError(f"phi0 must lie in [-pi, pi], got {self.phi0!r}")


@dataclass(frozen=True)
class SymState:
    """Normalized amplitude vector over the Dicke basis (m descending from j)."""

    j: float
    amps: np.ndarray

    def __post_init__(self):
        two_j = _two_j(self.j)
        amps = np.asarray(self.amps, dtype=complex).copy()
        if amps.shape != (two_j + 1,):
            raise ValueError(f"expected {two_j + 1} amplitudes, got shape {amps.shape}")
        if abs(np.vdot(amps, amps).real - 1.0) > _STATE_NORM_TOL:
            raise ValueError("state is not normalized")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm_error(self) -> float:
        """|<psi|psi> - 1|, the monitored drift of an evolved state."""
        return abs(np.vdot(self.amps, self.amps).real - 1.0)

    def overlap(self, other: "SymState") -> complex:
        return complex(np.vdot(self.amps, other.amps))


@dataclass(frozen=True)
class UnitaryMatrix:
    """A dim x dim unitary, checked to _UNITARY_TOL in Frobenius norm."""

    matrix: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex).copy()
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("matrix must be square")
        dim = matrix.shape[0]
        defect = np.linalg.norm(matrix.conj().T @ matrix - np.eye(dim))
        if defect > _UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.2e})")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dim", dim)


def coherent_state(j: float, point: BlochPoint) -> SymState:
    """SU(2) coherent state at (theta0, phi0): the 2j-fold tensor power of
    cos(theta0/2)|0> + exp(-i phi0) sin(theta0/2)|1>."""
    two_j = _two_j(j)
    c = math.cos(point.theta0 / 2.0)
    s = math.sin(point.theta0 / 2.0)
    k = np.arange(two_j + 1)
    binom = np.array([math.comb(two_j, int(kk)) for kk in k], dtype=float)
    amps = np.sqrt(binom) * c ** (two_j - k) * (s * np.exp(-1j * point.phi0)) ** k
    amps /= np.linalg.norm(amps)
    return SymState(j, amps)


def collective_ops(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Angular momentum matrices (Jx, Jy, Jz) in the Dicke basis."""
    two_j = _two_j(j)
    jj = two_j / 2.0
    m = jj - np.arange(two_j + 1)
    jz = np.diag(m).astype(complex)
    # J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; m+1 sits one index above m.
    raise_elem = np.sqrt(jj * (jj + 1.0) - m[1:] * (m[1:] + 1.0))
    jp = np.zeros((two_j + 1, two_j + 1), dtype=complex)
    jp[np.arange(two_j), np.arange(1, two_j + 1)] = raise_elem
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    return jx, jy, jz


def floquet(params: KickedTopParams) -> UnitaryMatrix:
    """One-period evolution operator exp(-i (kappa0/2j) Jz^2) exp(-i p Jy).

    The torsion is applied as diagonal phases; the rotation comes from a single
    Hermitian eigendecomposition of Jy, exact to machine precision at any p.
    """
    two_j = _two_j(params.j)
    _, jy, _ = collective_ops(params.j)
    m = two_j / 2.0 - np.arange(two_j + 1)
    evals, evecs = np.linalg.eigh(jy)
    rotation = (evecs * np.exp(-1j * params.p * evals)) @ evecs.conj().T
    torsion = np.exp(-1j * (params.kappa0 / two_j) * m**2)
    return UnitaryMatrix(torsion[:, None] * rotation)


def evolve(u: UnitaryMatrix, psi0: SymState, n: int) -> SymState:
    """Apply the Floquet operator n times by repeated matrix-vector products.

    No renormalization is performed; use SymState.norm_error to monitor drift.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if u.dim != psi0.dim:
        raise ValueError(f"dimension mismatch: U is {u.dim}, state is {psi0.dim}")
    vec = psi0.amps.copy()
    matrix = u.matrix
    for _ in range(n):
        vec = matrix @ vec
    return SymState(psi0.j, vec)


def trajectory(u: UnitaryMatrix, psi0: SymState, n: int) -> np.ndarray:
    """Amplitudes of U^k psi0 for k = 0..n as an (n+1, dim) array.

    Storage is opt-in through this function; evolve() itself keeps O(1) memory.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if u.dim != psi0.dim:
        raise ValueError(f"dimension mismatch: U is {u.dim}, state is {psi0.dim}")
    out = np.empty((n + 1, psi0.dim), dtype=complex)
    out[0] = psi0.amps
    matrix = u.matrix
    for k in range(1, n + 1):
        out[k] = matrix @ out[k - 1]
    return out


def parity_op(j: float) -> np.ndarray:
    """The parity operator (tensor power of sigma_y over all 2j qubits) in the
    Dicke basis; it maps m -> -m with phase (-1)^(j-m) i^(2j) and commutes with
    the Floquet operator."""
    two_j = _two_j(j)
    dim = two_j + 1
    op = np.zeros((dim, dim), dtype=complex)
    global_phase = 1j**two_j
    for i in range(dim):
        op[two_j - i, i] = global_phase * (-1) ** i
    return op


def symmetric_to_qubits(psi: SymState) -> np.ndarray:
    """Expand a Dicke-basis state to the full 2^(2j) qubit register.

    Dicke index i spreads uniformly over all strings with i ones.  Guarded to
    2j <= QUBIT_EXPANSION_LIMIT to avoid exponential blowup.
    """
    two_j = _two_j(psi.j)
    if two_j > QUBIT_EXPANSION_LIMIT:
        raise ValueError(
            f"register expansion limited to 2j <= {QUBIT_EXPANSION_LIMIT}, got 2j = {two_j}"
        )
    vec = np.zeros(2**two_j, dtype=complex)
    scale = np.array(
        [psi.amps[k] / math.sqrt(math.comb(two_j, k)) for k in range(two_j + 1)]
    )
    for s in range(2**two_j):
        vec[s] = scale[s.bit_count()]
    return vec


def qubits_to_symmetric(vec: np.ndarray, j: float) -> np.ndarray:
    """Project a full-register vector onto the Dicke basis (unnormalized amps)."""
    two_j = _two_j(j)
    vec = np.asarray(vec, dtype=complex)
    if vec.shape != (2**two_j,):
        raise ValueError(f"expected a 2^{two_j}-dimensional register vector")
    amps = np.zeros(two_j + 1, dtype=complex)
    for s in range(2**two_j):
        k = s.bit_count()
        amps[k] += vec[s] / math.sqrt(math.comb(two_j, k))
    return amps
