"""Tracy-Widom utilities built on the Hastings-McLeod Painleve II solution.

Used as an independent route to the GUE distribution (for cross-checks)
and as a closed-form evaluator of the KPZ fixed-point log-determinant
curvature, which is an exact solution of the KP equation.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp

from ._quad import panel_nodes
from .special import airy_real


_S_HIGH = 12.0
_S_LOW = -7.0


@lru_cache(maxsize=1)
def _hm_solution():
    """Hastings-McLeod solution of q'' = s q + 2 q^3 with q ~ Ai at +oo."""
    h = 1e-7
    q0 = float(airy_real(_S_HIGH))
    qp0 = float((airy_real(_S_HIGH + h) - airy_real(_S_HIGH - h)) / (2 * h))
    sol = solve_ivp(
        lambda s, y: [y[1], s * y[0] + 2.0 * y[0] ** 3],
        (_S_HIGH, _S_LOW), [q0, qp0],
        method="DOP853", rtol=3e-13, atol=1e-16, dense_output=True)
    if not sol.success:
        raise RuntimeError("Painleve II integration failed")
    return sol


def q_hm(s):
    """q(s) and q'(s) of the Hastings-McLeod solution (vectorized)."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s_arr < _S_LOW):
        raise ValueError(f"Painleve solution tabulated only for s >= {_S_LOW}")
    sol = _hm_solution()
    out = np.empty((2, s_arr.size))
    high = s_arr > _S_HIGH
    if np.any(high):
        out[0, high] = airy_real(s_arr[high])
        hh = 1e-6
        out[1, high] = (airy_real(s_arr[high] + hh) - airy_real(s_arr[high] - hh)) / (2 * hh)
    if np.any(~high):
        out[:, ~high] = sol.sol(s_arr[~high])
    return out[0].reshape(np.shape(s)), out[1].reshape(np.shape(s))


def f_gue_painleve(x: float) -> float:
    """F_GUE(x) = exp(-int_x^oo (y - x) q(y)^2 dy), the Painleve route."""
    top = max(_S_HIGH, x + 1.0)
    edges = x + (top - x) * np.linspace(0.0, 1.0, 49) ** 2
    y, w = panel_nodes(edges, 16)
    q, _ = q_hm(y)
    val = float(np.sum((y - x) * q * q * w))
    return math.exp(-val)


def u_kpz(x: float, gamma: float, tau: float) -> float:
    """Curvature of log det for the KPZ fixed point marginal.

    u = d^2/dx^2 log F_GUE(x/tau^{1/3} + gamma^2/(4 tau^{4/3}))
      = -tau^{-2/3} q(s)^2 at the scaled argument s.
    """
    s = x / tau ** (1.0 / 3.0) + gamma ** 2 / (4.0 * tau ** (4.0 / 3.0))
    q, _ = q_hm(s)
    return -float(q) ** 2 / tau ** (2.0 / 3.0)
