"""Analytic continuation onto the two-sheeted surface glued along [1, oo).

Sheet One is the cut plane C \\ ((-oo,0] u [1,oo)); Sheet Two carries the
continued branches. Near the branch point z = 1 the local coordinate is
w with z = 1 + w^2; in the convention used here Im w > 0 projects to
Sheet One and Im w < 0 to Sheet Two, and the continued root behaves as
i sqrt(2) w near w = 0.

The exponentiated path integral of the one-form g(z) dz (denoted ee here)
is path independent because the residue of g at z = 1 is the integer 3;
its default evaluation composes the Sheet-One closed form with a local
crossing of the branch point in the w-chart, where the 3/w pole is
subtracted analytically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._quad import dyadic_edges, panel_nodes
from .bethe import q_func, u0
from .errors import DomainError, PathError, PoleError
from .special import GAMMA_ONE_MINUS, SQRT_2PI, SQRT_PI, b_function, polylog

_TINY = 1e-300


@dataclass(frozen=True)
class SheetPoint:
    """A point on the surface: base value, sheet tag (1 or 2), cut side.

    `side` selects the boundary approach (+1 from above, -1 from below)
    when z lies on (-oo, 0] or, for sheet bookkeeping, on [1, oo).
    """

    z: complex
    sheet: int = 1
    side: int = 0

    def __post_init__(self):
        if self.sheet not in (1, 2):
            raise DomainError("sheet must be 1 or 2")
        z = complex(self.z)
        if z.imag == 0 and z.real <= 0 and self.side == 0:
            raise DomainError("points on (-oo, 0] require a side flag")
        if z.imag == 0 and z.real >= 1 and self.side == 0:
            raise DomainError("points on the gluing cut [1, oo) require a side flag")


def _logz(z: complex, side: int) -> complex:
    z = complex(z)
    if z.imag == 0:
        if z.real < 0:
            return math.log(abs(z)) + 1j * side * math.pi
        if z.real > 0 and side:
            return math.log(z.real) + 1j * side * _TINY
    return cmath.log(z)


def sheet_u0(p: SheetPoint) -> complex:
    """The continued root: u0 on Sheet One, -u0 on Sheet Two."""
    val = -(-2.0 * _logz(p.z, p.side)) ** 0.5
    return val if p.sheet == 1 else -val


def sheet_polylog(s: float, p: SheetPoint) -> complex:
    """Continued polylog L_s; on Sheet Two carries the root-power correction."""
    z = complex(p.z)
    if p.sheet == 2 and s == 0.5 and abs(z - 1.0) < 1e-13:
        raise PoleError("L_{1/2} has a simple pole at the branch point")
    base = complex(polylog(s, z, cut_side=p.side))
    if p.sheet == 1:
        return base
    u = -(-2.0 * _logz(z, p.side)) ** 0.5  # base-sheet root
    return base - 2.0 ** (2.0 - s) * GAMMA_ONE_MINUS[s] * (-u) ** (2.0 * s - 2.0)


def f_pair(p: SheetPoint):
    """The exponent functions (f1, f2) of the slow/fast large-time factors."""
    z = complex(p.z)
    li32 = complex(polylog(1.5, z, cut_side=p.side))
    li52 = complex(polylog(2.5, z, cut_side=p.side))
    if p.sheet == 2:
        return (li32 - li52) / SQRT_2PI, -li32 / SQRT_2PI
    u = sheet_u0(p)
    f1 = (li32 - li52) / SQRT_2PI - 2.0 * u - (2.0 / 3.0) * u ** 3
    f2 = 2.0 * u - li32 / SQRT_2PI
    return f1, f2


def g_form(p: SheetPoint) -> complex:
    """The integrand g(z) = L_{1/2}(z)(L_{1/2}(z) + 2^{5/2} sqrt(pi)/U0(z))/(2 pi z)."""
    z = complex(p.z)
    li = complex(polylog(0.5, z, cut_side=p.side))
    u = -(-2.0 * _logz(z, p.side)) ** 0.5
    c = 2.0 ** 1.5 * SQRT_PI
    if p.sheet == 1:
        return li * (li + 2.0 * c / u) / (2.0 * math.pi * z)
    return (li + c / u) * (li - c / u) / (2.0 * math.pi * z)


# ---------------------------------------------------------------------------
# Local chart near the branch point: z = 1 + w^2, Im w > 0 <-> Sheet One.


def _sheet_of_w(w: complex) -> int:
    return 1 if w.imag > 0 else 2


def g_in_w(w: complex) -> complex:
    """g(z(w)) dz/dw = g(1 + w^2) * 2w; has the pure pole 3/w at w = 0."""
    z = 1.0 + w * w
    side = 0
    if z.imag == 0:
        side = 1 if w.real < 0 else -1  # crossing point on the glued cut
    p = SheetPoint(z=z, sheet=_sheet_of_w(w) if w.imag != 0 else 2, side=side)
    return g_form(p) * 2.0 * w


def residue_g_at_one(r: float = 0.05, m: int = 512) -> complex:
    """Residue of g dz at the branch point via a w-chart circle."""
    th = (np.arange(m) + 0.5) * 2.0 * math.pi / m
    vals = np.array([g_in_w(r * cmath.exp(1j * t)) * r * cmath.exp(1j * t)
                     for t in th])
    return complex(np.mean(vals) * 1j * 2 * math.pi / (2j * math.pi))


# ---------------------------------------------------------------------------
# Path integration of g on the surface.


@dataclass(frozen=True)
class SurfacePath:
    """Ordered segments; each is one of

    ("closed", z)                 Sheet-One start: 2B(z) - 2Q(u0(z)),
    ("zseg", z0, z1, sheet)       straight segment on a fixed sheet,
    ("warc", r, th0, th1)         arc |w| = r in the branch chart,
    ("wseg", w0, w1)              straight segment in the branch chart.
    """

    segments: tuple


def ee_closed_sheet1(z: complex, side: int = 0) -> complex:
    """E(z) = exp(2B(z) - 2Q(u0(z))) for 0 < |z| < 1 on Sheet One."""
    if not 0.0 < abs(z) < 1.0:
        raise DomainError("closed form requires 0 < |z| < 1")
    uu = u0(z, side=side) if (complex(z).imag == 0 and complex(z).real < 0) else u0(z)
    return cmath.exp(2.0 * complex(b_function(z)) - 2.0 * complex(q_func(complex(uu))))


def _int_zseg(z0: complex, z1: complex, sheet: int, n_panels: int = 24) -> complex:
    edges = z0 + (z1 - z0) * np.linspace(0.0, 1.0, n_panels + 1)
    t, w = panel_nodes(edges, 16)
    for zz in t:
        if zz.imag == 0 and (zz.real <= 0 or zz.real >= 1):
            raise PathError("z-segment touches a cut; route through the w-chart")
    vals = np.array([g_form(SheetPoint(z=complex(zz), sheet=sheet)) for zz in t])
    return complex(np.sum(vals * w))


def _int_warc(r: float, th0: float, th1: float, n_panels: int = 24) -> complex:
    """Integral of g dz - (3/w) dw on the arc plus the explicit log term."""
    edges = np.linspace(th0, th1, n_panels + 1)
    th, w = panel_nodes(edges, 16)
    vals = []
    for t in th:
        wv = r * cmath.exp(1j * t.real)
        vals.append((g_in_w(wv) - 3.0 / wv) * 1j * wv)
    reg = complex(np.sum(np.asarray(vals) * w))
    return reg + 3.0 * 1j * (th1 - th0)


def _int_wseg(w0: complex, w1: complex, n_panels: int = 24) -> complex:
    if w0 == 0 or w1 == 0:
        raise PathError("w-segment endpoint at the branch point")
    edges = w0 + (w1 - w0) * np.linspace(0.0, 1.0, n_panels + 1)
    t, w = panel_nodes(edges, 16)
    vals = np.array([g_in_w(complex(wv)) - 3.0 / complex(wv) for wv in t])
    # branch of log w followed continuously along the straight segment
    dlog = cmath.log(w1 / w0)
    return complex(np.sum(vals * w)) + 3.0 * dlog


def ee_path(path: SurfacePath) -> complex:
    total = 0.0 + 0j
    for seg in path.segments:
        kind = seg[0]
        if kind == "closed":
            total += cmath.log(ee_closed_sheet1(seg[1]))
        elif kind == "zseg":
            total += _int_zseg(seg[1], seg[2], seg[3])
        elif kind == "warc":
            total += _int_warc(seg[1], seg[2], seg[3])
        elif kind == "wseg":
            total += _int_wseg(seg[1], seg[2])
        else:
            raise PathError(f"unknown segment kind {kind!r}")
    return cmath.exp(total)


def default_path(p: SheetPoint, delta: float = 0.16, clockwise: bool = True) -> SurfacePath:
    """Sheet-One closed form to 1 - delta, branch crossing, then a z-leg."""
    if p.sheet == 1:
        raise DomainError("default path targets Sheet Two; use the closed form")
    zw = 1.0 - delta
    r = math.sqrt(delta)
    arc = ("warc", r, math.pi / 2, -math.pi / 2) if clockwise \
        else ("warc", r, math.pi / 2, 3 * math.pi / 2)
    segs = [("closed", zw), arc]
    target = complex(p.z)
    if target != zw:
        if target.real < 0.05 or (target.imag == 0 and target.real >= 1):
            mid = 0.45j if (target.imag >= 0) else -0.45j
            segs += [("zseg", complex(zw), mid, 2), ("zseg", mid, target, 2)]
        else:
            segs.append(("zseg", complex(zw), target, 2))
    return SurfacePath(segments=tuple(segs))


def ee(p: SheetPoint, path: SurfacePath | None = None) -> complex:
    """The exponentiated integral of g from the regularized Sheet-One origin."""
    if path is not None:
        return ee_path(path)
    if p.sheet == 1:
        return ee_closed_sheet1(p.z, side=p.side)
    return ee_path(default_path(p))


def ee_at_w(w: complex, delta: float = 0.16) -> complex:
    """ee evaluated in the branch chart (for boundedness checks near w = 0)."""
    r = math.sqrt(delta)
    return ee_path(SurfacePath(segments=(
        ("closed", 1.0 - delta), ("wseg", 1j * r, complex(w)))))


# ---------------------------------------------------------------------------
# The half-line polylog constant.


def harmonic_tail_integral(delta: float, upper: float = 10.0) -> float:
    """int_delta^upper Li_{1/2}(e^{-t^2/2}) dt, panels refined near 0."""
    lo = dyadic_edges(delta, 1.0, 30, toward_a=True)
    edges = np.concatenate((lo, np.linspace(1.0, upper, 19)[1:]))
    t, w = panel_nodes(edges, 16)
    vals = polylog(0.5, np.exp(-t * t / 2.0)).real
    return float(np.sum(vals * w))


def harmonic_constant(deltas=(1e-3, 1e-4)) -> float:
    """lim_{delta->0} [ int_delta^oo Li_{1/2}(e^{-t^2/2}) dt + sqrt(2 pi) log delta ].

    Richardson-extrapolated over the two deltas (the defect is O(delta)).
    """
    d1, d2 = deltas
    c1 = harmonic_tail_integral(d1) + SQRT_2PI * math.log(d1)
    c2 = harmonic_tail_integral(d2) + SQRT_2PI * math.log(d2)
    r = d1 / d2
    return float((r * c2 - c1) / (r - 1.0))


# ---------------------------------------------------------------------------
# The steepest-descent curve of the large-time analysis (figure data).


def gamma1_point(t: float) -> SheetPoint:
    """gamma1(t) = exp(-(t^2 - pi)/2 + i sqrt(pi) t); Sheet One for t < 0."""
    z = cmath.exp(-(t * t - math.pi) / 2.0 + 1j * math.sqrt(math.pi) * t)
    if t == 0.0:
        return SheetPoint(z=z.real + 0j, sheet=2, side=1)
    return SheetPoint(z=z, sheet=1 if t < 0 else 2)


def f1_on_gamma1(t: float) -> float:
    p = gamma1_point(t)
    if t == -math.sqrt(math.pi):  # endpoint z = -1 - i0
        p = SheetPoint(z=-1.0 + 0j, sheet=1, side=-1)
    return f_pair(p)[0].real
