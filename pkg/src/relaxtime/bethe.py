"""Bethe-root enumeration, the Q function, and the exponents Phi/Psi/V.

The root set S_-(z) = {w : exp(-w^2/2) = z, Re w < 0} is enumerated as
u_k = -sqrt(-2 log z + 4 pi i k); k = 0 is the principal root u0.

Q is evaluated by quadrature on the imaginary axis,

    Q(xi) = -(1/pi) * int_-U^U log(1 - exp(-xi^2/2) exp(-v^2/2)) / (iv - xi) dv,

with U chosen so the endpoint integrand magnitude is below 1e-18, and a
diagnostic route integrating Li_{1/2}(exp(-s^2/2)) along a ray into the
left sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._quad import dyadic_edges, panel_nodes
from .errors import DomainError, SectorError
from .special import SQRT_2PI, polylog


def u0(z, side: int = 0):
    """The principal Bethe root -sqrt(-2 log z), analytic off (-oo, 0] u [1, oo).

    On the negative real axis a boundary value is selected by `side`
    (+1 from the upper half-plane, -1 from below).
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    lg = np.log(z_arr + 0j)
    neg_axis = (z_arr.imag == 0) & (z_arr.real < 0)
    if np.any(neg_axis):
        if side == 0:
            raise DomainError("u0 on (-oo, 0] requires a side flag")
        lg = lg.copy()
        lg[neg_axis] = np.log(np.abs(z_arr[neg_axis])) + 1j * side * math.pi
    val = -np.sqrt(-2.0 * lg)
    return complex(val[0]) if scalar else val.reshape(np.shape(z))


def bethe_roots(z: complex, K: int) -> np.ndarray:
    """Roots u_k = -sqrt(-2 log z + 4 pi i k), k = -K..K (principal branch)."""
    if not 0.0 < abs(z) < 1.0:
        raise DomainError("Bethe roots require 0 < |z| < 1")
    if K < 1:
        raise DomainError("K >= 1 required")
    k = np.arange(-K, K + 1)
    return -np.sqrt(-2.0 * np.log(complex(z)) + 4j * math.pi * k)


_Q_SECTOR_TOL = 1e-12


def _check_sector(xi: complex):
    a = math.atan2(xi.imag, xi.real)
    if not (3 * math.pi / 4 - _Q_SECTOR_TOL <= abs(a) <= math.pi + _Q_SECTOR_TOL):
        raise SectorError(f"xi={xi} outside the sector 3pi/4 < |arg xi| <= pi")


@lru_cache(maxsize=200_000)
def q_func(xi: complex) -> complex:
    """Q(xi) on the left sector 3pi/4 < arg xi < 5pi/4, via the axis integral."""
    xi = complex(xi)
    _check_sector(xi)
    q = np.exp(-xi * xi / 2.0)
    aq = abs(q)
    # endpoint bound |q| exp(-U^2/2) < 1e-18
    U = math.sqrt(2.0 * (41.5 + max(math.log(aq), 0.0)))
    n_pan = max(8, int(math.ceil(2 * U / 0.5)))
    edges = np.linspace(-U, U, n_pan + 1)
    if aq > 0.9:
        # integrand has a near-log spike at v = 0; refine centrally
        inner = dyadic_edges(0.0, 1.0, 24, toward_a=True)
        edges = np.unique(np.concatenate((edges, inner, -inner)))
    v, w = panel_nodes(edges, 16)
    g = np.log1p(-q * np.exp(-v * v / 2.0))
    val = -np.sum(g / (1j * v - xi) * w) / math.pi
    return complex(val)


def q_func_ray(xi: complex, reach: float = 10.0) -> complex:
    """Diagnostic route: sqrt(2/pi) * int_{-oo}^{xi} Li_{1/2}(e^{-s^2/2}) ds.

    The path is the ray xi - t, t >= 0, which stays in the sector.
    """
    xi = complex(xi)
    _check_sector(xi)
    T = reach + abs(xi)
    edges = xi - np.linspace(T, 0.0, 41)
    s, w = panel_nodes(edges, 16)
    vals = polylog(0.5, np.exp(-s * s / 2.0))
    return complex(math.sqrt(2.0 / math.pi) * np.sum(vals * w))


def q_signed(xi: complex) -> complex:
    """Q extended to the right sector by odd reflection, Q(-xi) = -Q(xi).

    The paired-set kernels evaluate Q at mirrored roots; the reflection is
    the extension consistent with the split-kernel derivation.
    """
    if xi.real > 0:
        return -q_func(-xi)
    return q_func(xi)


@dataclass(frozen=True)
class ExponentParams:
    """Physical parameters (time tau > 0, location gamma, height x)."""

    tau: float
    gamma: float = 0.0
    x: float = 0.0

    def __post_init__(self):
        if self.tau <= 0:
            raise DomainError("tau must be positive")


def phi(xi, tau: float, x: float, q=None):
    """Phi(xi) = -tau xi^3/3 + x xi - Q(xi)."""
    xi = np.asarray(xi, dtype=complex)
    if q is None:
        q = np.array([q_func(complex(v)) for v in np.atleast_1d(xi)]).reshape(xi.shape)
    return -tau / 3.0 * xi ** 3 + x * xi - q


def psi(xi, tau: float, x: float, q=None):
    """Psi(xi) = Phi(xi; 2x, 2tau) / 2 = -tau xi^3/3 + x xi - Q(xi)/2."""
    xi = np.asarray(xi, dtype=complex)
    if q is None:
        q = np.array([q_func(complex(v)) for v in np.atleast_1d(xi)]).reshape(xi.shape)
    return -tau / 3.0 * xi ** 3 + x * xi - 0.5 * q


def v_poly(u, tau: float, gamma: float, x: float):
    """V(u) = -tau u^3/3 + gamma u^2/2 + x u."""
    u = np.asarray(u, dtype=complex)
    return -tau / 3.0 * u ** 3 + gamma / 2.0 * u ** 2 + x * u


@dataclass(frozen=True)
class BetheSet:
    """Truncated S_-(z): roots u_k with cached Q values, k = -K..K."""

    z: complex
    trunc: int
    roots: np.ndarray
    q_values: np.ndarray

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.trunc, self.trunc + 1)

    def phi(self, tau: float, x: float) -> np.ndarray:
        return -tau / 3.0 * self.roots ** 3 + x * self.roots - self.q_values

    def psi(self, tau: float, x: float) -> np.ndarray:
        return -tau / 3.0 * self.roots ** 3 + x * self.roots - 0.5 * self.q_values


def bethe_set(z: complex, K: int = 12) -> BetheSet:
    roots = bethe_roots(z, K)
    q = np.array([q_func(complex(r)) for r in roots])
    return BetheSet(z=complex(z), trunc=K, roots=roots, q_values=q)


def ensure_adequate(bs: BetheSet, tau: float, x: float,
                    tail_tol: float = 1e-14, K_cap: int = 64) -> BetheSet:
    """Grow the truncation until the edge weight e^Phi(u_K) is negligible."""
    while True:
        w = np.exp(np.real(bs.phi(tau, x)))
        edge = max(w[0], w[-1])
        if edge <= tail_tol * max(float(np.max(w)), 1e-300) or bs.trunc >= K_cap:
            return bs
        bs = bethe_set(bs.z, min(K_cap, bs.trunc * 2))
