"""Closed-form dynamics of the 4-qubit kicked top (j = 2, p = pi/2).

The parity-adapted symmetric basis splits the Floquet operator into
1 + 2 + 2 blocks: the W-like combination phi1+ is an exact eigenvector with
eigenvalue -1 (in the gauge where the torsion's constant diagonal phase
exp(-i kappa0/4) is dropped) at every torsion strength, the remaining
positive-parity pair {phi2+, phi3+} evolves by Chebyshev block powers with
chi = sin(kappa0/2)/2, and the negative-parity block has period 2 up to a
dynamical phase.  The near-degeneracy of phi1+ with one eigenvector of the
positive block at small kappa0 produces dynamical tunneling between the +y
and -y coherent states, with an exactly computable splitting.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import cheby
from .exact3 import AvgEntropy, STATE_PLUS_Y, STATE_ZERO, _even_partner, _require_state_id

SECTOR_PLUS = "plus"
SECTOR_MINUS = "minus"
SECTOR_SINGLET = "singlet"

_SQRT3 = math.sqrt(3.0)
# {phi2+, phi3+} coordinates of phi23+ = (tensor(+y) + tensor(-y))/sqrt(2).
_W23 = np.array([0.5, -_SQRT3 / 2.0])

_COS_HALF_PI = (1.0, 0.0, -1.0, 0.0)
_SIN_HALF_PI = (0.0, 1.0, 0.0, -1.0)


@dataclass(frozen=True)
class ParityBlockSpec4:
    """Derived constants of the 4-qubit blocks: kappa = kappa0/2 and
    chi = sin(kappa)/2; delta(n) = n (2pi - kappa0)/4 is the accumulated phase
    between the singlet and the positive block."""

    kappa0: float
    kappa: float = field(init=False)
    chi: float = field(init=False)
    gamma: float = field(init=False)

    def __post_init__(self):
        if not math.isfinite(self.kappa0):
            raise ValueError("kappa0 must be finite")
        kappa = self.kappa0 / 2.0
        chi = math.sin(kappa) / 2.0
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "chi", chi)
        object.__setattr__(self, "gamma", math.acos(chi))

    def delta(self, n: int) -> float:
        return n * (2.0 * math.pi - self.kappa0) / 4.0


def _alpha_beta(spec: ParityBlockSpec4, n: int) -> tuple[complex, complex]:
    t_n, u_nm1 = cheby.t_u_trig(n, spec.chi)
    alpha = t_n + 0.5j * u_nm1 * math.cos(spec.kappa)
    beta = (_SQRT3 / 2.0) * u_nm1 * cmath.exp(1j * spec.kappa)
    return alpha, beta


def block_power4(kappa0: float, n: int, sector: str):
    """n-th power of a 4-qubit parity block; O(1) in n.

    plus: exp(-i n (pi + kappa)/2) [[a_n, i b_n*], [i b_n, a_n*]] over
    {phi2+, phi3+}; minus: a period-2 rotation over {phi1-, phi2-} up to the
    dynamical phase exp(-3 i n kappa/4); singlet: the scalar (-1)^n on phi1+.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    spec = ParityBlockSpec4(kappa0)
    if sector == SECTOR_SINGLET:
        return (-1.0) ** n
    if sector == SECTOR_PLUS:
        alpha, beta = _alpha_beta(spec, n)
        phase = cmath.exp(-0.5j * n * (math.pi + spec.kappa))
        return phase * np.array(
            [[alpha, 1j * beta.conjugate()], [1j * beta, alpha.conjugate()]]
        )
    if sector == SECTOR_MINUS:
        c = _COS_HALF_PI[n % 4]
        s = _SIN_HALF_PI[n % 4]
        edge = cmath.exp(0.75j * spec.kappa)
        phase = cmath.exp(-0.75j * n * spec.kappa)
        return phase * np.array([[c, edge * s], [-s / edge, c]])
    raise ValueError(f"unknown sector {sector!r}")


def _xi_zero(spec: ParityBlockSpec4, n: int) -> float:
    """Real overlap parameter of the evolved |0000> state at even n."""
    t_n, u_nm1 = cheby.t_u_trig(n, spec.chi)
    w = n * spec.kappa0 / 8.0
    return t_n * math.cos(w) - 0.5 * u_nm1 * math.cos(spec.kappa0 / 2.0) * math.sin(w)


def _xi_plus_y_sq(spec: ParityBlockSpec4, n: int) -> float:
    """|xi'_n|^2 for the +y coherent state; valid at every n."""
    t_n, u_nm1 = cheby.t_u_trig(n, spec.chi)
    d = spec.delta(n)
    val = t_n * math.cos(d) + u_nm1 * math.sin(d) * math.cos(spec.kappa0 / 2.0)
    return val * val


def entropy4_closed(state_id: str, n: int, kappa0: float) -> float:
    """Single-qubit linear entropy after n kicks, exact closed form.

    |0000>: S = (1 - xi_n^2)/2 at even n with the odd->even step rule;
    +y coherent state: S = (1 - |xi'_n|^2)/2 at every n.
    """
    _require_state_id(state_id)
    if n < 1:
        raise ValueError("n must be >= 1 (the initial product state has S = 0)")
    spec = ParityBlockSpec4(kappa0)
    if state_id == STATE_ZERO:
        xi = _xi_zero(spec, _even_partner(n))
        return 0.5 * (1.0 - xi * xi)
    return 0.5 * (1.0 - _xi_plus_y_sq(spec, n))


def entropy4_series(state_id: str, n_max: int, kappa0: float) -> np.ndarray:
    """Vectorized entropy4_closed for n = 0..n_max (S(0) = 0)."""
    _require_state_id(state_id)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    spec = ParityBlockSpec4(kappa0)
    n = np.arange(n_max + 1)
    if state_id == STATE_ZERO:
        n_arg = n + (n % 2)
        t_all, u_all = cheby.t_u_series(n_max + 1, spec.chi)
        w = n_arg * (spec.kappa0 / 8.0)
        xi = t_all[n_arg] * np.cos(w) - 0.5 * u_all[n_arg] * math.cos(
            spec.kappa0 / 2.0
        ) * np.sin(w)
        out = 0.5 * (1.0 - xi * xi)
    else:
        t_all, u_all = cheby.t_u_series(n_max, spec.chi)
        d = n * (2.0 * math.pi - spec.kappa0) / 4.0
        val = t_all * np.cos(d) + u_all * np.sin(d) * math.cos(spec.kappa0 / 2.0)
        out = 0.5 * (1.0 - val * val)
    out[0] = 0.0
    return out


def avg_entropy4(state_id: str, kappa0: float) -> AvgEntropy:
    """Infinite-time averaged single-qubit linear entropy, closed form.

    With c2 = cos^2(kappa0/2):  |0000>  ->  (9 + 2 c2)/(8 (3 + c2))  and
    +y  ->  (9 - c2)/(8 (3 + c2)).  At the resonant torsions kappa0 = 0 and
    2pi the phase averages behind the formula degenerate: both initial states
    are stationary at kappa0 = 0 (average 0); at 2pi the formula's continuity
    value is returned with the flag set.
    """
    _require_state_id(state_id)
    resonant = kappa0 in (0.0, 2.0 * math.pi)
    if kappa0 == 0.0:
        return AvgEntropy(0.0, True)
    if state_id == STATE_ZERO and kappa0 == 2.0 * math.pi:
        return AvgEntropy(0.0, True)
    c2 = math.cos(kappa0 / 2.0) ** 2
    if state_id == STATE_ZERO:
        return AvgEntropy((9.0 + 2.0 * c2) / (8.0 * (3.0 + c2)), resonant)
    return AvgEntropy((9.0 - c2) / (8.0 * (3.0 + c2)), resonant)


@dataclass(frozen=True)
class TunnelingReport:
    """Two-level tunneling data for the +y/-y coherent pair at small kappa0.

    gamma_minus is the eigenphase of the positive-block eigenvector that is
    degenerate with phi1+ (eigenphase pi) at kappa0 = 0; the splitting
    Delta = |pi - gamma_minus| sets the tunneling time n_star = pi/Delta, with
    small-kappa0 asymptotic 128 pi / kappa0^3, and a GHZ-like superposition
    appears at n_star/2.
    """

    kappa0: float
    gamma_minus: float
    splitting: float
    n_star: float
    n_star_asymptotic: float
    ghz_time: float


def tunneling(kappa0: float) -> TunnelingReport:
    """Exact eigenphase splitting and tunneling time for four qubits."""
    if kappa0 <= 0:
        raise ValueError("kappa0 must be > 0")
    gamma_minus = kappa0 / 4.0 + math.pi - math.asin(0.5 * math.sin(kappa0 / 2.0))
    splitting = abs(math.pi - gamma_minus)
    n_star = math.pi / splitting
    return TunnelingReport(
        kappa0=kappa0,
        gamma_minus=gamma_minus,
        splitting=splitting,
        n_star=n_star,
        n_star_asymptotic=128.0 * math.pi / kappa0**3,
        ghz_time=n_star / 2.0,
    )


def _phi23_matrix_element(kappa0: float, n: int) -> complex:
    """<phi23+| U_+^n |phi23+> via the closed block power; O(1) in n."""
    block = block_power4(kappa0, n, SECTOR_PLUS)
    return complex(_W23 @ block @ _W23)


def tunneling_overlap_series(kappa0: float, times) -> np.ndarray:
    """Squared overlap of U^n tensor(+y) with tensor(-y) at the given times.

    The +y coherent state is (i phi1+ + phi23+)/sqrt(2) up to phases, so the
    overlap follows from the singlet eigenvalue (-1)^n and one 2x2 block power
    per requested time.
    """
    if kappa0 <= 0:
        raise ValueError("kappa0 must be > 0")
    out = np.empty(len(times))
    for i, n in enumerate(times):
        n = int(n)
        amp = 0.5 * (_phi23_matrix_element(kappa0, n) - (-1.0) ** n)
        out[i] = abs(amp) ** 2
    return out


def ghz_fidelity_series(kappa0: float, times) -> np.ndarray:
    """Squared overlap of U^n tensor(+y) with the GHZ-like superposition
    (tensor(+y) - i tensor(-y))/sqrt(2) at the given times."""
    if kappa0 <= 0:
        raise ValueError("kappa0 must be > 0")
    out = np.empty(len(times))
    for i, n in enumerate(times):
        n = int(n)
        elem = _phi23_matrix_element(kappa0, n)
        term_singlet = (-1.0) ** n * (1.0 - 1j) / (2.0 * math.sqrt(2.0))
        term_block = (1.0 + 1j) * elem / (2.0 * math.sqrt(2.0))
        out[i] = abs(term_singlet + term_block) ** 2
    return out


def parity_basis_states4() -> dict[str, np.ndarray]:
    """Dicke amplitudes (m = 2..-2) of the 4-qubit parity-adapted basis."""
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    return {
        "phi1_plus": np.array([0.0, inv_sqrt2, 0.0, -inv_sqrt2, 0.0]),
        "phi1_minus": np.array([0.0, inv_sqrt2, 0.0, inv_sqrt2, 0.0]),
        "phi2_plus": np.array([inv_sqrt2, 0.0, 0.0, 0.0, inv_sqrt2]),
        "phi2_minus": np.array([inv_sqrt2, 0.0, 0.0, 0.0, -inv_sqrt2]),
        "phi3_plus": np.array([0.0, 0.0, 1.0, 0.0, 0.0]),
    }


def plus_y_dicke4() -> np.ndarray:
    """Dicke amplitudes of tensor(+y): (i phi1+)/sqrt(2) + phi2+/sqrt(8) - sqrt(3/8) phi3+."""
    basis = parity_basis_states4()
    return (
        1j * basis["phi1_plus"] / math.sqrt(2.0)
        + basis["phi2_plus"] / math.sqrt(8.0)
        - math.sqrt(3.0 / 8.0) * basis["phi3_plus"]
    )


def plus_y_evolved_dicke4(kappa0: float, n: int) -> np.ndarray:
    """Dicke amplitudes of the evolved tensor(+y) state after n kicks, O(1) in n.

    Works entirely inside the positive-parity sector (the singlet phase plus
    one 2x2 block power), so tunneling-era snapshots at n of order 1e5 cost
    the same as n = 1.  The overall phase follows the block conventions.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    basis = parity_basis_states4()
    block = block_power4(kappa0, n, SECTOR_PLUS)
    c23 = block @ np.array([1.0 / math.sqrt(8.0), -math.sqrt(3.0 / 8.0)])
    return (
        (-1.0) ** n * 1j / math.sqrt(2.0) * basis["phi1_plus"]
        + c23[0] * basis["phi2_plus"]
        + c23[1] * basis["phi3_plus"]
    )
