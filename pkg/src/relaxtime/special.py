"""Scalar special functions: half-integer polylogarithms on the cut plane,
the Airy function, and the prefactor functions entering the distribution
integrands.

Polylogarithm evaluation is split by region:

* ``|z| <= 0.6``          -- power series, tail bound ``|z|^(N+1)/(1-|z|)``;
* ``|z - 1| <= 0.15``     -- branch-point expansion in ``(z-1)`` with
  Stirling-number coefficients, truncated at order 25;
* near the half-line ``[1, oo)`` (where a pole-separating contour cannot be
  drawn) -- the same expansion resummed in ``mu = log z``, which converges
  for ``|mu| < 2 pi``;
* elsewhere -- a hairpin contour around ``[0, oo)`` shaped as a parabola
  inside the strip ``|Im t| < pi``.

Only the orders s = 1/2, 3/2, 5/2 are supported.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ._quad import dyadic_edges, gl_nodes, panel_nodes
from .errors import ConvergenceError, DomainError, RangeError

SQRT_PI = math.sqrt(math.pi)
SQRT_2PI = math.sqrt(2.0 * math.pi)

#: Gamma(1 - s) for the supported orders (exact closed forms).
GAMMA_ONE_MINUS = {0.5: SQRT_PI, 1.5: -2.0 * SQRT_PI, 2.5: 4.0 * SQRT_PI / 3.0}

#: zeta at the half-integer points named explicitly in the method notes.
ZETA_HALF = -1.4603545088095868
ZETA_3HALF = 2.6123753486854883
ZETA_5HALF = 1.3414872572509171
ZETA_MINUS_HALF = -0.2078862249773546
ZETA_MINUS_3HALF = -0.025485201889833035

_SUPPORTED_S = (0.5, 1.5, 2.5)

# ---------------------------------------------------------------------------
# Riemann zeta on the real axis (needed at s - k for the expansions).

_B2K = (
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
)


def _zeta_em(s: float) -> float:
    """Euler-Maclaurin zeta for real s > 0, s != 1."""
    N = 24
    out = sum(n ** -s for n in range(1, N)) + 0.5 * N ** -s + N ** (1 - s) / (s - 1)
    rising = s
    for k, b in enumerate(_B2K, start=1):
        out += b / math.factorial(2 * k) * rising * N ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return out


def zeta_real(s: float) -> float:
    """zeta(s) for real s != 1; negative s via the functional equation."""
    if s == 1.0:
        raise DomainError("zeta pole at s=1")
    if s > 0:
        return _zeta_em(s)
    # zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    return (2.0 ** s * math.pi ** (s - 1) * math.sin(math.pi * s / 2)
            * math.gamma(1 - s) * _zeta_em(1 - s))


@lru_cache(maxsize=None)
def _zeta_shifted_table(s: float, kmax: int) -> np.ndarray:
    """zeta(s - k) for k = 0..kmax."""
    return np.array([zeta_real(s - k) for k in range(kmax + 1)])


# ---------------------------------------------------------------------------
# Branch-point expansion coefficients.

_NEARONE_ORDER = 25


@lru_cache(maxsize=None)
def _stirling1(nmax: int):
    """Signed Stirling numbers of the first kind s(n, m), exact integers."""
    s = [[0] * (nmax + 1) for _ in range(nmax + 1)]
    s[0][0] = 1
    for n in range(1, nmax + 1):
        for m in range(1, n + 1):
            s[n][m] = s[n - 1][m - 1] - (n - 1) * s[n - 1][m]
    return s


@lru_cache(maxsize=None)
def _nearone_coeffs(s: float) -> np.ndarray:
    """Coefficients of (z-1)^n, n = 1..25, in the branch-point expansion."""
    st = _stirling1(_NEARONE_ORDER)
    zt = _zeta_shifted_table(s, _NEARONE_ORDER)
    out = np.empty(_NEARONE_ORDER)
    for n in range(1, _NEARONE_ORDER + 1):
        fact_n = math.factorial(n)
        acc = 0.0
        for m in range(1, n + 1):
            acc += st[n][m] / fact_n * zt[m]
        out[n - 1] = acc
    return out


# ---------------------------------------------------------------------------
# Region evaluators (all vectorized over a complex ndarray).

_SERIES_RADIUS = 0.6
_NEARONE_RADIUS = 0.15
_LOGFORM_MU_MAX = 4.8
_PARAB_C = 0.5
_PARAB_SMAX = 3.05
_PARAB_MARGIN = 0.5


def _polylog_series(s: float, z: np.ndarray) -> np.ndarray:
    r = float(np.max(np.abs(z))) if z.size else 0.0
    if r >= 1.0:
        raise DomainError("series only valid inside the unit disk")
    # N from the rigorous tail bound r^(N+1)/(1-r) < 1e-17
    N = 1 if r == 0.0 else max(1, int(math.ceil((-39.5 + math.log(1 - r)) / math.log(r))))
    N = min(N, 4000)
    out = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(1, N + 1):
        term = term * z
        out = out + term / k ** s
    return out


def _minus_mu_power(mu: np.ndarray, expo: float, cut_side: int) -> np.ndarray:
    """(-mu)^expo, principal branch; on mu in (0, oo) pick the side limit."""
    neg = -mu
    if cut_side:
        on_cut = (mu.imag == 0) & (mu.real > 0)
        if np.any(on_cut):
            neg = neg + 0j
            # z -> x +- i0 means mu -> log x +- i0, so -mu -> -(log x) ∓ i0
            neg[on_cut] = neg[on_cut] - 1j * cut_side * 1e-300
    return neg ** expo


def _polylog_nearone(s: float, z: np.ndarray, cut_side: int = 0) -> np.ndarray:
    mu = np.log(z + 0j)
    lead = GAMMA_ONE_MINUS[s] * _minus_mu_power(mu, s - 1.0, cut_side)
    c = _nearone_coeffs(s)
    w = z - 1.0
    acc = np.zeros_like(z)
    pw = np.ones_like(z)
    for n in range(_NEARONE_ORDER):
        pw = pw * w
        acc = acc + c[n] * pw
    return lead + zeta_real(s) + acc


def _polylog_logform(s: float, z: np.ndarray, cut_side: int = 0) -> np.ndarray:
    """Resummation in mu = log z, valid |mu| < 2 pi (used |mu| <= 4.8)."""
    mu = np.log(z + 0j)
    if np.any(np.abs(mu) > _LOGFORM_MU_MAX):
        raise ConvergenceError("log-form expansion outside its safe radius")
    lead = GAMMA_ONE_MINUS[s] * _minus_mu_power(mu, s - 1.0, cut_side)
    zt = _zeta_shifted_table(s, 160)
    acc = np.full_like(z, zt[0])
    term = np.ones_like(z)
    tiny_runs = 0
    last = np.inf
    for k in range(1, 161):
        term = term * mu / k
        contrib = zt[k] * term
        acc = acc + contrib
        last = float(np.max(np.abs(contrib)))
        tiny_runs = tiny_runs + 1 if last < 1e-17 else 0
        if tiny_runs >= 3 and k >= 12:
            break
    else:
        if last > 1e-13:
            raise ConvergenceError("log-form expansion did not converge in 160 terms")
    return lead + acc


def _polylog_contour(s: float, z: np.ndarray) -> np.ndarray:
    """Hairpin parabola around [0, oo): t(sig) = a sig^2 - c + i sig."""
    mu = np.log(z + 0j)
    x_max = float(np.max(mu.real)) if z.size else 0.0
    a = (44.0 + max(x_max, 0.0) + _PARAB_C) / _PARAB_SMAX ** 2
    sep = mu.real + _PARAB_C + _PARAB_MARGIN < a * mu.imag ** 2
    if not np.all(sep):
        raise DomainError("pole not separable by the hairpin contour")
    # traversed from +oo above the axis, around the vertex, back to +oo below
    edges = np.linspace(_PARAB_SMAX, -_PARAB_SMAX, 49)
    sig, w = panel_nodes(edges, 16)
    t = a * sig ** 2 - _PARAB_C + 1j * sig
    dt = 2.0 * a * sig + 1j
    base = (-t) ** (s - 1.0)
    integ = base[None, :] / (np.exp(t)[None, :] - z[:, None])
    I = np.sum(integ * (w * dt)[None, :], axis=1)
    return -GAMMA_ONE_MINUS[s] * z / (2j * math.pi) * I


def polylog(s: float, z, cut_side: int = 0):
    """Li_s(z) for s in {1/2, 3/2, 5/2}, z off the cut [1, oo).

    Boundary values on the cut are available through ``cut_side`` (+1 for
    the limit from above, -1 from below). Accepts scalars or arrays.
    """
    if s not in _SUPPORTED_S:
        raise DomainError(f"unsupported polylog order {s}")
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    if not np.all(np.isfinite(z_arr)):
        raise DomainError("polylog argument must be finite")
    on_cut = (z_arr.imag == 0) & (z_arr.real >= 1.0)
    if np.any(on_cut) and cut_side == 0:
        raise DomainError("polylog argument on the cut [1, oo); pass cut_side")

    out = np.empty_like(z_arr)
    az = np.abs(z_arr)
    m_series = az <= _SERIES_RADIUS
    m_nearone = ~m_series & (np.abs(z_arr - 1.0) <= _NEARONE_RADIUS)
    rest = ~m_series & ~m_nearone
    if np.any(m_series):
        out[m_series] = _polylog_series(s, z_arr[m_series])
    if np.any(m_nearone):
        out[m_nearone] = _polylog_nearone(s, z_arr[m_nearone], cut_side)
    if np.any(rest):
        zr = z_arr[rest]
        mu = np.log(zr + 0j)
        a0 = (44.0 + _PARAB_C) / _PARAB_SMAX ** 2
        separable = mu.real + _PARAB_C + _PARAB_MARGIN < a0 * mu.imag ** 2
        sub = np.empty_like(zr)
        if np.any(separable):
            sub[separable] = _polylog_contour(s, zr[separable])
        if np.any(~separable):
            sub[~separable] = _polylog_logform(s, zr[~separable], cut_side)
        out[rest] = sub
    return out[0] if scalar else out.reshape(np.shape(z))


def polylog_derivative_check(s: float, z: complex, h: float = 1e-6) -> float:
    """Relative defect of z d/dz Li_s = Li_{s-1}, by central differences."""
    d = (polylog(s, z + h) - polylog(s, z - h)) / (2 * h)
    rhs = polylog(s - 1.0, z)
    return abs(z * d - rhs) / max(abs(rhs), 1e-30)


# ---------------------------------------------------------------------------
# Airy function.

_AIRY_C1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_AIRY_C2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)
_OMEGA = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))


def _airy_series(z: np.ndarray) -> np.ndarray:
    """Maclaurin series in extended precision; good for |z| <= ~9."""
    zl = np.asarray(z, dtype=np.clongdouble)
    z3 = zl * zl * zl
    f = np.ones_like(zl)
    g = zl.copy()
    tf = np.ones_like(zl)
    tg = zl.copy()
    for k in range(0, 220):
        tf = tf * z3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * z3 / ((3 * k + 3) * (3 * k + 4))
        f = f + tf
        g = g + tg
        if max(np.max(np.abs(tf)), np.max(np.abs(tg))) < 1e-25:
            break
    out = np.clongdouble(_AIRY_C1) * f - np.clongdouble(_AIRY_C2) * g
    return np.asarray(out, dtype=complex)


def _airy_contour_batch(z: np.ndarray) -> np.ndarray:
    """Saddle-centered hyperbola contour, valid |arg z| <= ~pi/6, |z| >= ~4.

    u = sqrt(z) w with w(t) = -sqrt(1+t^2) + i t; along the contour
    Re(-w^3/3 + w) = -(2/3)(1+t^2)^(3/2), so after factoring the saddle
    value the integrand decays like exp(-|z|^(3/2) t^2) near t = 0.
    """
    sq = np.sqrt(z + 0j)
    z32 = sq ** 3
    scale = np.abs(z) ** -0.75

    def eval_grid(nv: int) -> np.ndarray:
        v = np.linspace(-11.0, 11.0, nv)
        t = v[None, :] * scale[:, None]
        root = np.sqrt(1.0 + t * t)
        h_shift = -(2.0 / 3.0) * (root ** 3 - 1.0) - (2.0 / 3.0) * 1j * t ** 3
        wp = -t / root + 1j
        vals = np.exp(z32[:, None] * h_shift) * wp
        dv = (v[1] - v[0]) * scale
        return np.sum(vals, axis=1) * dv

    I = eval_grid(801)
    for nv in (1601, 3201, 6401):
        I2 = eval_grid(nv)
        if np.max(np.abs(I2 - I)) <= 1e-14 * max(1.0, float(np.max(np.abs(I2)))):
            I = I2
            break
        I = I2
    return sq * np.exp(-(2.0 / 3.0) * z32) / (2j * math.pi) * I


def _airy_poincare(z: np.ndarray) -> np.ndarray:
    """Asymptotic expansion with optimal truncation; |z| >= ~9, |arg z| < pi."""
    zeta = (2.0 / 3.0) * (z + 0j) ** 1.5
    acc = np.ones_like(zeta)
    term = np.ones_like(zeta)
    u = 1.0
    best = np.abs(term)
    frozen = np.zeros(zeta.shape, dtype=bool)
    for k in range(1, 60):
        u = u * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        term = term * (-1.0) / zeta
        contrib = u * term
        mag = np.abs(contrib)
        frozen |= mag > best
        contrib = np.where(frozen, 0.0, contrib)
        best = np.where(frozen, best, mag)
        acc = acc + contrib
        if np.all(mag < 1e-18) or np.all(frozen):
            break
    return np.exp(-zeta) / (2.0 * SQRT_PI * (z + 0j) ** 0.25) * acc


def _airy_oscillatory(x: np.ndarray) -> np.ndarray:
    """Real x <= -8 via the oscillatory expansion."""
    ax = -np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * ax ** 1.5
    ceven = np.ones_like(zeta)
    codd = np.zeros_like(zeta)
    u = 1.0
    term = np.ones_like(zeta)
    for k in range(1, 40):
        u = u * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        term = term / zeta
        contrib = u * term
        if np.all(np.abs(contrib) < 1e-18):
            break
        if k % 2 == 0:
            ceven += contrib * (-1) ** (k // 2)
        else:
            codd += contrib * (-1) ** ((k - 1) // 2)
    ang = zeta + math.pi / 4.0
    return (np.sin(ang) * ceven - np.cos(ang) * codd) / (SQRT_PI * ax ** 0.25) + 0j


def airy(z):
    """Ai(z) for |z| <= 1e3; scalars or arrays, real or complex."""
    z_in = z
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    scalar = np.isscalar(z_in) or getattr(z_in, "ndim", 0) == 0
    if not np.all(np.isfinite(z_arr)):
        raise RangeError("airy argument must be finite")
    if np.any(np.abs(z_arr) > 1e3):
        raise RangeError("airy supported for |z| <= 1e3")

    out = np.empty_like(z_arr)
    real = z_arr.imag == 0
    xr = z_arr.real

    m_osc = real & (xr <= -8.0)
    m_ser = (real & (xr > -8.0) & (xr <= 4.5)) | (~real & (np.abs(z_arr) <= 4.5))
    m_pos = ~m_ser & ~m_osc & (np.abs(np.angle(z_arr)) <= 0.5) & (np.abs(z_arr) > 4.5)
    done = m_osc | m_ser | m_pos
    m_mid = ~done & (np.abs(z_arr) < 9.0)
    m_asym = ~done & ~m_mid & (np.abs(np.angle(z_arr)) <= math.pi - 0.3)
    m_conn = ~done & ~m_mid & ~m_asym

    if np.any(m_osc):
        out[m_osc] = _airy_oscillatory(z_arr[m_osc].real)
    if np.any(m_ser):
        out[m_ser] = _airy_series(z_arr[m_ser])
    if np.any(m_pos):
        out[m_pos] = _airy_contour_batch(z_arr[m_pos])
    if np.any(m_mid):
        out[m_mid] = _airy_series(z_arr[m_mid])
    if np.any(m_asym):
        out[m_asym] = _airy_poincare(z_arr[m_asym])
    if np.any(m_conn):
        zc = z_arr[m_conn]
        # rotate into sectors the asymptotic expansion covers
        out[m_conn] = -(_OMEGA * _airy_poincare(_OMEGA * zc)
                        + _OMEGA ** 2 * _airy_poincare(_OMEGA ** 2 * zc))

    # a conjugate-symmetric contour makes Ai real on the real axis
    out[real] = out[real].real
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(z_in))


def airy_real(x):
    """Ai on the real line, returned as float array (hot path for kernels).

    Arguments beyond x = 103 (where Ai underflows float64) return 0.
    """
    x_arr = np.asarray(x, dtype=float)
    flat = x_arr.ravel()
    out = np.zeros(flat.shape, dtype=float)
    alive = flat <= 103.0
    if np.any(alive):
        out[alive] = np.asarray(airy(flat[alive]), dtype=complex).real
    return out.reshape(x_arr.shape)


# ---------------------------------------------------------------------------
# Prefactor functions.


def _b_integrand(y: np.ndarray) -> np.ndarray:
    li = polylog(0.5, y)
    return li * li / y


def b_function(z: complex, levels: int = 30) -> complex:
    """B(z) = (1/4 pi) * integral of Li_{1/2}(y)^2 / y along the ray 0 -> z.

    The integrand is O(y) at the origin; for |z| -> 1 the outer end is
    refined dyadically (Li_{1/2}(y)^2 ~ pi/(1-y) near y = 1).
    """
    if abs(z) >= 1.0:
        raise DomainError("B(z) requires |z| < 1")
    if z == 0:
        return 0.0 + 0j
    edges_t = dyadic_edges(1.0, 0.0, levels, toward_a=False)
    edges_t = np.concatenate((np.linspace(0.0, 0.5, 9), edges_t[edges_t > 0.5]))
    t, w = panel_nodes(edges_t, 16)
    y = z * t
    vals = _b_integrand(y)
    return np.sum(vals * w) * z / (4.0 * math.pi)


def prefactors(z: complex):
    """(A1, A2, A3, B) at z, all on the principal branches.

    A1 = -Li_{3/2}(z)/sqrt(2 pi), A2 = -Li_{5/2}(z)/sqrt(2 pi),
    A3 = -log(1-z)/4, B the ray integral above. Requires 0 <= |z| < 1.
    """
    if abs(z) >= 1.0:
        raise DomainError("prefactors require |z| < 1")
    if z == 0:
        return 0j, 0j, 0j, 0j
    a1 = -polylog(1.5, z) / SQRT_2PI
    a2 = -polylog(2.5, z) / SQRT_2PI
    a3 = -0.25 * np.log(1.0 - z)
    return a1, a2, a3, b_function(z)
