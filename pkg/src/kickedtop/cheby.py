"""Chebyshev polynomial evaluation helpers.

T_n is the first kind, U_{n-1} the second kind shifted down by one, which is
the pair that shows up in powers of SU(2) matrices: M^n = T_n(x) I + U_{n-1}(x)
(M - x I) for M with trace 2x and unit determinant.
"""

from __future__ import annotations

import math

import numpy as np


def t_u_recurrence(n: int, x: float) -> tuple[float, float]:
    """Return (T_n(x), U_{n-1}(x)) by the three-term recurrence. O(n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1.0, 0.0
    t_prev, t_cur = 1.0, x  # T_0, T_1
    u_prev, u_cur = 0.0, 1.0  # U_{-1}, U_0
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
        u_prev, u_cur = u_cur, 2.0 * x * u_cur - u_prev
    return t_cur, u_cur


def t_u_trig(n: int, x: float) -> tuple[float, float]:
    """Return (T_n(x), U_{n-1}(x)) via cos/sin of n*arccos(x); needs |x| <= 1.

    Exact to machine precision for any n, O(1) cost.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if abs(x) > 1.0:
        raise ValueError("trig evaluation requires |x| <= 1")
    if x == 1.0:
        return 1.0, float(n)
    if x == -1.0:
        return float((-1) ** n), float(n * (-1) ** (n - 1))
    gamma = math.acos(x)
    t = math.cos(n * gamma)
    u = math.sin(n * gamma) / math.sin(gamma)
    return t, u


def t_u_series(n_max: int, x: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (T_n(x), U_{n-1}(x)) for n = 0..n_max, via the trig form."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if abs(x) > 1.0:
        raise ValueError("trig evaluation requires |x| <= 1")
    n = np.arange(n_max + 1)
    if x == 1.0:
        return np.ones(n_max + 1), n.astype(float)
    if x == -1.0:
        sign = (-1.0) ** n
        return sign, -n * sign
    gamma = math.acos(x)
    t = np.cos(n * gamma)
    u = np.sin(n * gamma) / math.sin(gamma)
    return t, u
