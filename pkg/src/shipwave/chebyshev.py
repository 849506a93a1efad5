"""Chebyshev point sets on [0, 1] and barycentric Lagrange interpolation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "ChebyshevGrid",
    "grid_second_kind",
    "grid_first_kind",
    "bary_eval",
    "bary_derivative",
    "diff_entry",
    "diff_matrix",
]

_SNAP = 4.0 * np.finfo(np.float64).eps


@dataclass(frozen=True, eq=False)
class ChebyshevGrid:
    """Nodes and barycentric weights of a Chebyshev point set on [0, 1].

    ``m`` is the polynomial order, so there are ``m + 1`` nodes.  Arrays are
    read-only; grids are cached and shared.
    """

    kind: str
    m: int
    nodes: np.ndarray
    bary_weights: np.ndarray

    def __len__(self):
        return self.m + 1


def _half_angle_nodes(angles):
    """(1 - cos a)/2 for a in [0, pi], accurate at both ends.

    The lower half uses sin(a/2)**2 (no cancellation near 0), the upper half
    its mirror image, and a == pi/2 maps to exactly 0.5.
    """
    out = np.empty_like(angles)
    low = angles < 0.5 * math.pi
    high = angles > 0.5 * math.pi
    out[low] = np.sin(0.5 * angles[low]) ** 2
    out[high] = 1.0 - np.sin(0.5 * (math.pi - angles[high])) ** 2
    out[~(low | high)] = 0.5
    return out


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


@lru_cache(maxsize=64)
def grid_second_kind(m: int) -> ChebyshevGrid:
    """Chebyshev extreme points tau_k = (1 - cos(k pi / m)) / 2, k = 0..m.

    Barycentric weights are (-1)**k with half weight at both endpoints, scaled
    so the interior weights have magnitude 2.
    """
    if int(m) != m or m < 2:
        raise DomainError(f"second-kind grid needs integer m >= 2, got {m!r}")
    m = int(m)
    k = np.arange(m + 1)
    angles = k * (math.pi / m)
    angles[m] = math.pi
    nodes = _half_angle_nodes(angles)
    nodes[0], nodes[m] = 0.0, 1.0
    weights = np.where(k % 2 == 0, 2.0, -2.0)
    weights[0] = 1.0
    weights[m] = 1.0 if m % 2 == 0 else -1.0
    _freeze(nodes, weights)
    return ChebyshevGrid("second_kind", m, nodes, weights)


@lru_cache(maxsize=64)
def grid_first_kind(m_check: int) -> ChebyshevGrid:
    """Chebyshev roots (1 - cos((k + 1/2) pi / (m + 1))) / 2, k = 0..m.

    All nodes lie strictly inside (0, 1); weights are
    (-1)**k sin((k + 1/2) pi / (m + 1)).
    """
    if int(m_check) != m_check or m_check < 1:
        raise DomainError(f"first-kind grid needs integer m >= 1, got {m_check!r}")
    m = int(m_check)
    k = np.arange(m + 1)
    angles = (k + 0.5) * (math.pi / (m + 1))
    nodes = _half_angle_nodes(angles)
    weights = np.where(k % 2 == 0, 1.0, -1.0) * np.sin(angles)
    _freeze(nodes, weights)
    return ChebyshevGrid("first_kind", m, nodes, weights)


def _locate(grid, tau):
    """Index of the node equal (or within a few ulp) to each tau, else -1."""
    nodes = grid.nodes
    pos = np.clip(np.searchsorted(nodes, tau), 1, len(nodes) - 1)
    left, right = nodes[pos - 1], nodes[pos]
    nearest = np.where(np.abs(tau - left) <= np.abs(right - tau), pos - 1, pos)
    gap = np.abs(tau - nodes[nearest])
    hit = (gap == 0.0) | (gap <= _SNAP * np.maximum(1.0, np.abs(tau)))
    return np.where(hit, nearest, -1)


def bary_eval(grid: ChebyshevGrid, values, tau):
    """Evaluate the interpolant through ``values`` at ``tau``.

    Second (true) barycentric formula.  A ``tau`` that coincides with a node
    returns the stored value.
    """
    vals = np.asarray(values)
    if vals.shape[0] != len(grid):
        raise DomainError(f"expected {len(grid)} values, got {vals.shape[0]}")
    t = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    at = _locate(grid, t)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = grid.bary_weights / (t[:, None] - grid.nodes)
        out = (c @ vals) / c.sum(axis=1)
    hit = at >= 0
    if hit.any():
        out = out.astype(np.result_type(out, vals))
        out[hit] = vals[at[hit]]
    return out[0] if np.ndim(tau) == 0 else out


def bary_derivative(grid: ChebyshevGrid, values, tau):
    """Derivative of the interpolant at points ``tau`` that are not nodes.

    Uses p'(t) = sum_j c_j (p(t) - f_j) / (t - t_j) / sum_j c_j with
    c_j = w_j / (t - t_j), which avoids the cancellation of the quotient rule.
    """
    vals = np.asarray(values)
    t = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    if np.any(_locate(grid, t) >= 0):
        raise DomainError("bary_derivative is only defined off the nodes")
    diff = t[:, None] - grid.nodes
    c = grid.bary_weights / diff
    denom = c.sum(axis=1)
    p = (c @ vals) / denom
    deriv = ((c / diff) * (p[:, None] - vals[None, :])).sum(axis=1) / denom
    return deriv[0] if np.ndim(tau) == 0 else deriv


def diff_entry(grid: ChebyshevGrid, l: int, k: int) -> float:
    """Coefficient of (Phi_l - Phi_k) in the derivative of the interpolant at node l.

    Equals w_k / (w_l (t_k - t_l)) for k != l and 0 on the diagonal.
    """
    if l == k:
        return 0.0
    w, t = grid.bary_weights, grid.nodes
    return float(w[k] / (w[l] * (t[k] - t[l])))


@lru_cache(maxsize=64)
def _diff_matrix_cached(kind, m):
    grid = grid_second_kind(m) if kind == "second_kind" else grid_first_kind(m)
    w, t = grid.bary_weights, grid.nodes
    with np.errstate(divide="ignore"):
        offdiag = -(w[None, :] / w[:, None]) / (t[None, :] - t[:, None])
    np.fill_diagonal(offdiag, 0.0)
    d = offdiag - np.diag(offdiag.sum(axis=1))
    d.setflags(write=False)
    return d


def diff_matrix(grid: ChebyshevGrid) -> np.ndarray:
    """Nodal differentiation matrix: (D @ f)[l] = p'(t_l).

    Off-diagonal entries are -diff_entry(l, k); each diagonal entry is minus
    its row sum, so constants are differentiated to zero up to rounding.
    """
    return _diff_matrix_cached(grid.kind, grid.m)
