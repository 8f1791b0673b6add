"""Shared quadrature helpers: Gauss-Legendre panels on real intervals,
complex segments and circles, plus geometric edge refinement."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def gl_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def panel_nodes(edges: np.ndarray, n: int = 16):
    """All Gauss-Legendre nodes/weights for the panels defined by `edges`.

    `edges` may be real or complex (consecutive entries are panel endpoints
    along a polyline); returns flat arrays of nodes and weights.
    """
    edges = np.asarray(edges)
    x, w = gl_nodes(n)
    a, b = edges[:-1], edges[1:]
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    nodes = (mid + half * x[None, :]).ravel()
    wts = (half * np.broadcast_to(w, (len(a), n))).ravel()
    return nodes, wts


def gl_integrate(f, edges, n: int = 16):
    t, w = panel_nodes(np.asarray(edges, dtype=complex), n)
    return np.sum(f(t) * w)


def gl_integrate_real(f, edges, n: int = 16):
    t, w = panel_nodes(np.asarray(edges, dtype=float), n)
    return np.sum(f(t) * w)


def segment_edges(z0: complex, z1: complex, n_panels: int = 8) -> np.ndarray:
    return z0 + (z1 - z0) * np.linspace(0.0, 1.0, n_panels + 1)


def dyadic_edges(a: float, b: float, levels: int, toward_a: bool = True) -> np.ndarray:
    """Panel edges on [a, b] refined dyadically toward one endpoint.

    Finest panel has width (b - a) * 2**-levels and touches the endpoint.
    """
    t = np.concatenate(([0.0], 2.0 ** np.arange(-levels, 1, dtype=float)))
    if toward_a:
        return a + (b - a) * t
    return b - (b - a) * t[::-1]
