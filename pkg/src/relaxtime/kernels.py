"""Concrete kernel constructors.

Discrete kernels on the truncated Bethe set (step kernel, flat kernel, the
paired-set integrable kernel H) are returned as dense matrices; continuous
kernels on (0, oo) (the one-sided series T_gamma, its product, and the
Airy-type kernels) are returned as vectorized callables for the Nystrom
machinery.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .bethe import BetheSet, ExponentParams, q_signed, v_poly
from .errors import DomainError, TruncationWarning
from .fredholm import HalfLineRule
from .special import airy_real

_TAIL_WARN = 1e-10


def _warn_if_truncated(weights: np.ndarray, label: str):
    w = np.abs(weights)
    if w.size >= 3 and max(w[0], w[-1]) > _TAIL_WARN * max(float(w.max()), 1e-300):
        warnings.warn(f"{label}: edge term not negligible; increase K",
                      TruncationWarning)


def step_kernel(bs: BetheSet, params: ExponentParams) -> np.ndarray:
    """Symmetric step kernel on S_-; inner eta-sum shares the truncation."""
    xi = bs.roots
    ph = bs.phi(params.tau, params.x)
    g = params.gamma
    a = np.exp(0.5 * ph + 0.25 * g * xi ** 2) / np.sqrt(-xi)
    b = np.exp(ph - 0.5 * g * xi ** 2) / (-xi)
    _warn_if_truncated(b, "step kernel eta-sum")
    C = 1.0 / (xi[:, None] + xi[None, :])
    inner = (C * b[None, :]) @ C.T
    return a[:, None] * inner * a[None, :]


def step_kernel_dx(bs: BetheSet, params: ExponentParams) -> np.ndarray:
    """d/dx of the step kernel (the x-dependence is linear in the exponents)."""
    xi = bs.roots
    ph = bs.phi(params.tau, params.x)
    g = params.gamma
    a = np.exp(0.5 * ph + 0.25 * g * xi ** 2) / np.sqrt(-xi)
    b = np.exp(ph - 0.5 * g * xi ** 2) / (-xi)
    C = 1.0 / (xi[:, None] + xi[None, :])
    inner_eta = (C * (b * xi)[None, :]) @ C.T
    inner = (C * b[None, :]) @ C.T
    base = a[:, None] * inner * a[None, :]
    extra = a[:, None] * inner_eta * a[None, :]
    halfsum = 0.5 * (xi[:, None] + xi[None, :])
    return base * halfsum + extra


def t_gamma(y, gamma: float, bs: BetheSet, tau: float):
    """T_gamma(y) = sum over S_- of e^{-tau xi^3/3 + gamma xi^2/2 + y xi - Q}/(-xi)."""
    y_arr = np.asarray(y, dtype=float)
    xi = bs.roots
    pref = np.exp(-tau / 3.0 * xi ** 3 + 0.5 * gamma * xi ** 2 - bs.q_values) / (-xi)
    _warn_if_truncated(pref, "T_gamma series")
    out = np.exp(y_arr[..., None] * xi) @ pref
    return complex(out) if out.ndim == 0 else out


def _grid_split(S, T):
    """Detect the meshgrid structure the Nystrom assembler produces."""
    S = np.asarray(S, dtype=float)
    T = np.asarray(T, dtype=float)
    if (S.ndim == 2 and T.ndim == 2 and S.shape == T.shape
            and np.array_equal(S, np.broadcast_to(S[:, :1], S.shape))
            and np.array_equal(T, np.broadcast_to(T[:1, :], T.shape))):
        return S[:, 0], T[0, :], True
    return S, T, False


def t_product_kernel(params: ExponentParams, bs: BetheSet, rule: HalfLineRule):
    """Kernel of T_{-gamma} T_{gamma}: inner u-integral on the same rule."""
    u = rule.nodes
    wu = rule.weights

    def kern(S, T):
        s, t, grid = _grid_split(S, T)
        if grid:
            left = t_gamma(s[:, None] + params.x + u[None, :], -params.gamma,
                           bs, params.tau)
            right = t_gamma(u[:, None] + params.x + t[None, :], params.gamma,
                            bs, params.tau)
            return (left * wu[None, :]) @ right
        left = t_gamma(s[..., None] + params.x + u, -params.gamma, bs, params.tau)
        right = t_gamma(u + params.x + t[..., None], params.gamma, bs, params.tau)
        return np.sum(left * right * wu, axis=-1)

    return kern


def flat_kernel(bs: BetheSet, params: ExponentParams) -> np.ndarray:
    """Symmetrized flat kernel -e^{Psi(xi1)+Psi(xi2)}/(sqrt(-xi1)sqrt(-xi2)(xi1+xi2))."""
    xi = bs.roots
    ps = bs.psi(params.tau, params.x)
    a = np.exp(ps) / np.sqrt(-xi)
    _warn_if_truncated(a, "flat kernel")
    return -(a[:, None] * a[None, :]) / (xi[:, None] + xi[None, :])


def paired_roots(bs: BetheSet) -> np.ndarray:
    """S = S_+ u S_-, ordered [-roots, roots]."""
    return np.concatenate((-bs.roots, bs.roots))


def h_vectors(bs: BetheSet, params: ExponentParams):
    """The dressed 2-vectors (f, g) of the integrable form on S = S_+ u S_-.

    Q on the mirrored half is the odd reflection Q(u) = -Q(-u), consistent
    with the split-kernel derivation. Returns (s, f, g) with f, g of shape
    (2N, 2), satisfying g(s)^T f(s) = 0 at every point.
    """
    s = paired_roots(bs)
    n = len(s)
    q = np.concatenate((-bs.q_values, bs.q_values))
    v = v_poly(s, params.tau, params.gamma, params.x)
    plus = np.arange(n) < n // 2
    f = np.zeros((n, 2), dtype=complex)
    g = np.zeros((n, 2), dtype=complex)
    f[plus, 0] = np.exp(-0.5 * v[plus] + 0.5 * q[plus]) / np.sqrt(s[plus])
    f[~plus, 1] = np.exp(0.5 * v[~plus] - 0.5 * q[~plus]) / np.sqrt(-s[~plus])
    g[~plus, 0] = -np.exp(0.5 * v[~plus] - 0.5 * q[~plus]) / np.sqrt(-s[~plus])
    g[plus, 1] = np.exp(-0.5 * v[plus] + 0.5 * q[plus]) / np.sqrt(s[plus])
    return s, f, g


def h_kernel(bs: BetheSet, params: ExponentParams):
    """Integrable kernel H(u,v) = f(u)^T g(v)/(u - v), zero diagonal."""
    s, f, g = h_vectors(bs, params)
    num = f @ g.T
    diff = s[:, None] - s[None, :]
    np.fill_diagonal(diff, 1.0)
    H = num / diff
    np.fill_diagonal(H, 0.0)
    return H, s, f, g


def airy_shifted(s, gamma: float, tau: float):
    """cal-A_gamma(s; tau) in its closed Airy form."""
    s = np.asarray(s, dtype=float)
    arg = s / tau ** (1.0 / 3.0) + gamma ** 2 / (4.0 * tau ** (4.0 / 3.0))
    pref = math.exp(gamma ** 3 / (12.0 * tau ** 2)) * np.exp(gamma * s / (2.0 * tau))
    return pref * airy_real(arg) / tau ** (1.0 / 3.0)


def airy_squared_kernel(x: float, rule: HalfLineRule):
    """Kernel of A_x^2 (the GUE route), as a matrix-valued closure."""

    def kern(S, T):
        u = rule.nodes
        wu = rule.weights
        s, t, grid = _grid_split(S, T)
        if grid:
            left = airy_real(s[:, None] + x + u[None, :])
            right = airy_real(u[:, None] + x + t[None, :])
            return (left * wu[None, :]) @ right
        left = airy_real(s[..., None] + x + u)
        right = airy_real(u + x + t[..., None])
        return np.sum(left * right * wu, axis=-1)

    return kern


def airy_single_kernel(x: float):
    """Kernel Ai(s + x + t) (the GOE route)."""

    def kern(S, T):
        return airy_real(np.asarray(S) + x + np.asarray(T))

    return kern


def kpz_product_kernel(x: float, tau: float, gamma: float, rule: HalfLineRule):
    """Kernel of A_{-gamma} A_{gamma} for the KPZ fixed-point marginal."""
    u = rule.nodes
    wu = rule.weights

    def kern(S, T):
        s, t, grid = _grid_split(S, T)
        if grid:
            left = airy_shifted(s[:, None] + x + u[None, :], -gamma, tau)
            right = airy_shifted(u[:, None] + x + t[None, :], gamma, tau)
            return (left * wu[None, :]) @ right
        left = airy_shifted(s[..., None] + x + u, -gamma, tau)
        right = airy_shifted(u + x + t[..., None], gamma, tau)
        return np.sum(left * right * wu, axis=-1)

    return kern


def airy_scaled_tau_kernel(bs: BetheSet, x: float, tau: float):
    """The small-time Bethe-sum kernel A_{x,tau}(s,t); converges to Ai(s+x+t)."""
    c = tau ** (1.0 / 3.0)

    def kern(S, T):
        y = c * (np.asarray(S, dtype=float) + x + np.asarray(T, dtype=float))
        xi = bs.roots
        pref = c * np.exp(-tau / 3.0 * xi ** 3 - bs.q_values) / (-xi)
        vals = np.exp(y[..., None] * xi)
        return vals @ pref

    return kern


def trace_step_kernel(bs: BetheSet, params: ExponentParams) -> complex:
    """Tr K_z as the double root sum."""
    xi = bs.roots
    ph = bs.phi(params.tau, params.x)
    g = params.gamma
    w = np.exp(ph + 0.5 * g * xi ** 2) / xi
    wbar = np.exp(ph - 0.5 * g * xi ** 2) / xi
    C = 1.0 / (xi[:, None] + xi[None, :]) ** 2
    return complex(w @ C @ wbar)


def t_product_trace(x: float, tau: float, gamma: float, bs: BetheSet,
                    y_span: float = 60.0, n_panels: int = 64) -> complex:
    """Tr(T_{-gamma} T_{gamma}) = int_x^oo (y - x) T_{-gamma}(y) T_{gamma}(y) dy."""
    from ._quad import panel_nodes
    edges = x + np.linspace(0.0, y_span, n_panels + 1) ** 2 / y_span
    y, w = panel_nodes(edges, 16)
    vals = (y - x) * np.asarray(t_gamma(y, -gamma, bs, tau)) \
        * np.asarray(t_gamma(y, gamma, bs, tau))
    return complex(np.sum(vals * w))


def check_z_consistency(bs: BetheSet, z: complex, tol: float = 1e-10):
    if abs(bs.z - z) > tol:
        raise DomainError("Bethe set built for a different z")
