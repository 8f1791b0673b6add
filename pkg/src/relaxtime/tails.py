"""Right-tail machinery.

The leading tail object is the weighted Airy-squared integral

    B(x; alpha) = int_x^oo (y - x) e^{alpha y} Ai(y)^2 dy,

truncated to [x, x + sqrt(x)] (the remainder is exponentially smaller).
The Airy-like function A(y; mu) generalizes the scaled Airy function by
the Q-correction in the exponent and is evaluated on the explicit
hyperbola-and-stem contour on which the steepest-descent bounds hold.
"""

from __future__ import annotations

import math

import numpy as np

from ._quad import panel_nodes
from .bethe import BetheSet, bethe_set, q_func
from .errors import ContourError, DomainError, PrecisionError
from .kernels import t_gamma, t_product_trace
from .special import airy_real
from .distributions import (f_goe_tail, f_gue_tail, one_minus_f_flat,
                            one_minus_f_step)


def airy_sq_tail(x: float, alpha: float = 0.0, a: float = 1.0,
                 beta: float = 0.5) -> float:
    """B(x; alpha) on the truncation window [x, x + a x^beta]."""
    if x < 1.0:
        raise DomainError("tail integral needs x >= 1")
    top = x + a * x ** beta
    edges = np.linspace(x, top, 33)
    y, w = panel_nodes(edges, 16)
    ai = airy_real(y)
    return float(np.sum((y - x) * np.exp(alpha * y) * ai * ai * w))


def airy_sq_tail_asymptotic(x: float, alpha: float = 0.0) -> float:
    """Leading asymptotic form of B(x; alpha) (for ratio diagnostics)."""
    return (math.exp(alpha * x - 4.0 / 3.0 * x ** 1.5) / (16.0 * math.pi * x ** 1.5)
            * (1.0 + alpha / math.sqrt(x) + 0.75 * alpha ** 2 / x))


# ---------------------------------------------------------------------------
# The Airy-like function A(y; mu).

_STEM_B = 0.2


def _contour_w(n_stem: int = 8, n_wing: int = 40, wing_reach: float = 6.0):
    """The descent contour in the w-plane: a vertical stem through w = -1
    joined to the hyperbola a^2 - b^2 = -1.45 a - 0.49, a <= -1."""
    stem = -1.0 + 1j * np.linspace(-_STEM_B, _STEM_B, n_stem + 1)
    a_vals = -1.0 - np.linspace(0.0, 1.0, n_wing + 1) ** 2 * wing_reach
    b_vals = np.sqrt(a_vals ** 2 + 1.45 * a_vals + 0.49)
    upper = (a_vals + 1j * b_vals)[1:]
    lower = (a_vals - 1j * b_vals)[1:][::-1]
    return np.concatenate((lower[:], stem, upper))


def airy_like(y: float, mu: float, tau: float = 1.0) -> complex:
    """A(y; mu) = int e^{-tau xi^3/3 + mu xi^2/2 + y xi - Q(xi)} dxi/(2 pi i).

    Evaluated as the scaled-Airy closed form plus the Q-correction
    integral on the explicit contour (centered at the descent saddle).
    """
    if y <= 0:
        raise DomainError("A(y; mu) implemented for y > 0")
    s = math.sqrt((y + mu ** 2 / (4.0 * tau)) / tau)
    if mu > 2.0 * math.sqrt(tau * y):
        raise DomainError("mu beyond the contour validity range")
    pref = math.exp(mu ** 3 / (12.0 * tau ** 2) + mu * y / (2.0 * tau)) / tau ** (1.0 / 3.0)
    base = float(airy_real(tau ** (2.0 / 3.0) * s * s))

    edges = _contour_w()
    wv, wq = panel_nodes(edges, 12)
    xi = s * wv + mu / (2.0 * tau)
    if np.any(np.real(xi) >= 0):
        raise ContourError("contour left the analyticity sector of Q")
    expo = tau * s ** 3 * (-wv ** 3 / 3.0 + wv)
    alive = expo.real > -45.0
    corr = 0.0 + 0j
    if np.any(alive):
        qv = np.array([q_func(complex(v)) for v in xi[alive]])
        vals = np.exp(expo[alive]) * np.expm1(-qv)
        corr = np.sum(vals * wq[alive])
    corr = tau ** (1.0 / 3.0) * s * corr / (2j * math.pi)
    return pref * (base + complex(corr))


def airy_like_no_q(y: float, mu: float, tau: float = 1.0) -> complex:
    """The same contour integral with Q dropped (closed-form check)."""
    s = math.sqrt((y + mu ** 2 / (4.0 * tau)) / tau)
    pref = math.exp(mu ** 3 / (12.0 * tau ** 2) + mu * y / (2.0 * tau)) / tau ** (1.0 / 3.0)
    edges = _contour_w(n_stem=16, n_wing=60)
    wv, wq = panel_nodes(edges, 14)
    expo = tau * s ** 3 * (-wv ** 3 / 3.0 + wv)
    val = np.sum(np.exp(expo) * wq) * tau ** (1.0 / 3.0) * s / (2j * math.pi)
    return pref * complex(val)


def airy_like_asymptotic(y: float, mu: float, tau: float = 1.0) -> float:
    """Leading exponential asymptotics of A(y; mu)."""
    arg = y + mu ** 2 / (4.0 * tau)
    return (math.exp(mu ** 3 / (12.0 * tau ** 2) + mu * y / (2.0 * tau)
                     - 2.0 / (3.0 * math.sqrt(tau)) * arg ** 1.5)
            / (2.0 * math.sqrt(math.pi) * tau ** 0.25 * arg ** 0.25))


# ---------------------------------------------------------------------------
# Tail-ratio verification harness.

_FLOOR = 1e-8


def tail_ratio(x: float, tau: float = 1.0, gamma: float = 0.0,
               m: int = 64, K: int = 12):
    """(ratio, expected) with ratio = (1-F(x;tau,gamma)) / (1-F_GUE(scaled)).

    expected is 1 for |gamma| < 1/2 and 2 at |gamma| = 1/2. Raises
    PrecisionError when 1-F is below the determinant accuracy floor.
    """
    omf = one_minus_f_step(x, tau, gamma, m=m, K=K)
    if omf < _FLOOR:
        raise PrecisionError(f"1 - F = {omf:.2e} below the tail accuracy floor")
    base = f_gue_tail(x / tau ** (1.0 / 3.0)
                      + gamma ** 2 / (4.0 * tau ** (4.0 / 3.0)))
    expected = 2.0 if abs(abs(gamma) - 0.5) < 1e-12 else 1.0
    return omf / base, expected


def flat_tail_ratio(x: float, tau: float = 1.0, m: int = 64, K: int = 12):
    """(ratio, 1) for the flat case against F_GOE(2^{2/3} tau^{-1/3} x)."""
    omf = one_minus_f_flat(x, tau, m=m, K=K)
    if omf < _FLOOR:
        raise PrecisionError(f"1 - F1 = {omf:.2e} below the tail accuracy floor")
    base = f_goe_tail(2.0 ** (2.0 / 3.0) * x / tau ** (1.0 / 3.0))
    return omf / base, 1.0


def hs_norm_sq(x: float, tau: float, gamma: float, K: int = 12) -> float:
    """Discretized ||T_gamma||_2^2 = int_x^oo (y-x) |T_gamma(y)|^2 dy
    on the tail-mode radius."""
    z = math.exp(-x / (2.0 * tau))
    bs = bethe_set(z, K)
    edges = x + np.linspace(0.0, 50.0, 65) ** 2 / 50.0
    y, w = panel_nodes(edges, 16)
    tg = np.asarray(t_gamma(y, gamma, bs, tau))
    return float(np.sum((y - x) * np.abs(tg) ** 2 * w))


def laurent_trace_coeffs(x: float, tau: float = 1.0, M: int = 32,
                         K: int = 12) -> dict:
    """z-Laurent coefficients c_{-1}, c_0, c_1 of Tr(T_{1/2} T_{-1/2})
    on |z| = e^{-x/(2 tau)}, by the circle FFT."""
    R = math.exp(-x / (2.0 * tau))
    vals = []
    for j in range(M):
        z = R * np.exp(2j * math.pi * j / M)
        bs = bethe_set(complex(z), K)
        vals.append(t_product_trace(x, tau, 0.5, bs))
    c = np.fft.fft(np.asarray(vals)) / M
    return {-1: complex(c[-1] * R), 0: complex(c[0]), 1: complex(c[1] / R)}


def laurent_trace_pattern(x: float, tau: float = 1.0) -> dict:
    """The predicted (c_{-1}, c_0, c_1) pattern from the tail law."""
    arg = x / tau ** (1.0 / 3.0) + 1.0 / (16.0 * tau ** (4.0 / 3.0))
    alpha = 1.0 / (2.0 * tau ** (2.0 / 3.0))
    b = airy_sq_tail(arg)
    bp = airy_sq_tail(arg, alpha)
    bm = airy_sq_tail(arg, -alpha)
    e = math.exp(1.0 / (96.0 * tau ** 2))
    return {-1: e * bm, 0: 2.0 * b, 1: bp / e}


def truncation_index(y: float, tau: float) -> int:
    """K(y) = floor((19/12) sqrt(tau y)) controlling the series remainder."""
    return int(math.floor(19.0 / 12.0 * math.sqrt(tau * y)))
