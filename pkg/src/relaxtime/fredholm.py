"""Finite-section Fredholm determinants and traces.

Discrete operators live on truncated Bethe sets and are plain complex
matrices. Continuous operators on (0, oo) are discretized by a Nystrom
rule: Gauss-Legendre nodes mapped by t = c (1+u)/(1-u), symmetrized with
sqrt-weights so that det(I - K) -> det(I - D^1/2 K D^1/2).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor

from ._quad import gl_nodes
from .errors import ConvergenceError, SingularityWarning


@dataclass(frozen=True)
class HalfLineRule:
    """Nystrom rule on (0, oo)."""

    nodes: np.ndarray
    weights: np.ndarray
    count: int
    scale: float


def halfline_rule(m: int = 96, scale: float = 1.0) -> HalfLineRule:
    u, w = gl_nodes(m)
    t = scale * (1.0 + u) / (1.0 - u)
    wt = scale * 2.0 * w / (1.0 - u) ** 2
    return HalfLineRule(nodes=t, weights=wt, count=m, scale=scale)


@dataclass(frozen=True)
class DetResult:
    value: complex
    error: float
    cond: float

    def __complex__(self):
        return complex(self.value)


def det_id_minus(mat: np.ndarray) -> complex:
    """det(I - mat) by LU with a small-pivot warning."""
    a = np.eye(mat.shape[0], dtype=complex) - mat
    lu, piv = lu_factor(a, check_finite=False)
    diag = np.diag(lu)
    if np.any(np.abs(diag) < 1e-300):
        warnings.warn("near-zero pivot in det(I-K)", SingularityWarning)
    sign = (-1.0) ** np.count_nonzero(piv != np.arange(len(piv)))
    return complex(sign * np.prod(diag))


def det_discrete(mat: np.ndarray) -> DetResult:
    """Determinant of I - mat with a cheap condition estimate."""
    val = det_id_minus(mat)
    a = np.eye(mat.shape[0], dtype=complex) - mat
    cond = float(np.linalg.cond(a))
    return DetResult(value=val, error=abs(val) * 1e-15 * cond, cond=cond)


def _sym_matrix(kernel, rule: HalfLineRule) -> np.ndarray:
    t = rule.nodes
    sw = np.sqrt(rule.weights)
    S, T = np.meshgrid(t, t, indexing="ij")
    return sw[:, None] * kernel(S, T) * sw[None, :]


def det_halfline(kernel, rule: HalfLineRule, check: bool = True,
                 tol: float = 1e-9) -> DetResult:
    """det(I - K) on (0, oo) for a vectorized kernel(s, t).

    With `check`, the value at half the node count provides the error
    estimate; a change above 10x tolerance raises ConvergenceError.
    """
    mat = _sym_matrix(kernel, rule)
    val = det_id_minus(mat)
    err = np.nan
    if check:
        half = halfline_rule(rule.count // 2, rule.scale)
        val_h = det_id_minus(_sym_matrix(kernel, half))
        err = abs(val - val_h)
        if err > 10.0 * max(tol, 1e-12):
            raise ConvergenceError(
                f"halfline determinant unstable under m-halving: change {err:.3e}")
    cond = float(np.linalg.cond(np.eye(mat.shape[0]) - mat))
    return DetResult(value=val, error=float(err), cond=cond)


def trace_discrete(mat: np.ndarray) -> complex:
    return complex(np.trace(mat))


def trace_halfline(kernel, rule: HalfLineRule) -> complex:
    t = rule.nodes
    return complex(np.sum(rule.weights * kernel(t, t)))


def logdet_x_derivative(mat: np.ndarray, dmat: np.ndarray) -> complex:
    """d/dx log det(I - K) = -Tr((I - K)^{-1} dK/dx)."""
    a = np.eye(mat.shape[0], dtype=complex) - mat
    return complex(-np.trace(np.linalg.solve(a, dmat)))


def fredholm_series(mat: np.ndarray, order: int = 2) -> complex:
    """Truncated series det(I-K) ~ 1 - TrK + ((TrK)^2 - TrK^2)/2 + ..."""
    t1 = np.trace(mat)
    out = 1.0 - t1
    if order >= 2:
        t2 = np.trace(mat @ mat)
        out = out + 0.5 * (t1 * t1 - t2)
    if order >= 3:
        t3 = np.trace(mat @ mat @ mat)
        out = out - (t1 ** 3 - 3 * t1 * t2 + 2 * t3) / 6.0
    return complex(out)
