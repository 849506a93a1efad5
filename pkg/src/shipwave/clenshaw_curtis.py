"""Clenshaw-Curtis evaluation of I(x, y, z) on a steepest-descent contour.

The half-line is rotated by the angle theta that makes (y + iz) t**2 decay
fastest.  For z <= 0 a single rotated integral is used; for z > 0 the real
segment [0, t*] is integrated first and the rotated ray starts at t*.  Each
piece is mapped to [-1, 1] and integrated with nested Clenshaw-Curtis rules of
n = 2**l * N0 intervals until three successive values agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegeneratePointError, DomainError, NonFiniteIntegrandError
from .numerics import dft
from .point import FieldPoint, as_point

__all__ = [
    "ContourPlan",
    "CCWeights",
    "CCResult",
    "CCCaps",
    "steepest_angle",
    "t_star",
    "contour_plan",
    "phase",
    "cc_weights",
    "cc_weights_direct",
    "cc_nodes",
    "cc_apply",
    "nested_cc",
    "integrate_I",
    "integrate_weighted",
]

N0 = 2
MAX_LEVEL = 18  # n = 2**19 intervals, 2**19 + 1 evaluations per integral
RESERVE = 10.0


@dataclass(frozen=True)
class ContourPlan:
    """Rotation angle, split point and whether the real segment [0, t*] is used."""

    theta: float
    t_star: float
    split: bool


@dataclass(frozen=True, eq=False)
class CCWeights:
    n: int
    weights: np.ndarray

    def __len__(self):
        return self.n + 1


@dataclass(frozen=True)
class CCResult:
    """Quadrature outcome.

    ``level`` is the termination level (the larger one for a split contour),
    ``levels`` holds it per integral.  ``error_estimate`` is the Cauchy
    quantity of the termination rule summed over the pieces, and
    ``max_re_phase`` the largest Re(varpi) met at any node.
    """

    value: complex
    eval_count: int
    level: int
    converged: bool
    levels: tuple = ()
    error_estimate: float = 0.0
    max_re_phase: float = -math.inf


@dataclass(frozen=True)
class CCCaps:
    """Limits for the nested rule: first size ``n0`` and deepest level ``max_level``."""

    n0: int = N0
    max_level: int = MAX_LEVEL

    def __post_init__(self):
        if self.n0 < 2 or self.n0 % 2:
            raise DomainError(f"n0 must be even and >= 2, got {self.n0}")
        if self.max_level < 2:
            raise DomainError("max_level must be >= 2 (three members are compared)")


# --------------------------------------------------------------------------
# contour geometry
# --------------------------------------------------------------------------


def _angle_parts(y, z):
    rho = math.hypot(y, z)
    if rho == 0.0:
        raise DegeneratePointError("steepest-descent angle undefined for y = z = 0")
    q = abs(y) / rho
    cos_t = math.sqrt(0.5 * (1.0 + q))
    sin_t = math.copysign(math.sqrt(0.5 * (1.0 - q)), z) if z != 0.0 else 0.0
    return cos_t, sin_t


def steepest_angle(y: float, z: float) -> float:
    """Angle theta with cos 2theta = -y/rho, sin 2theta = z/rho (rho = |y + iz|)."""
    cos_t, sin_t = _angle_parts(float(y), float(z))
    return math.atan2(sin_t, cos_t)


def t_star(p) -> float:
    """Split point |x| sin(theta) / (2 (|y| cos(theta) + z sin(theta))) for z > 0."""
    p = as_point(p)
    if not p.z > 0.0:
        raise DomainError(f"t_star is defined for z > 0 only, got z = {p.z}")
    cos_t, sin_t = _angle_parts(p.y, p.z)
    return abs(p.x) * sin_t / (2.0 * (abs(p.y) * cos_t + p.z * sin_t))


def contour_plan(p) -> ContourPlan:
    p = as_point(p)
    theta = steepest_angle(p.y, p.z)
    if p.z > 0.0:
        return ContourPlan(theta, t_star(p), True)
    return ContourPlan(theta, 0.0, False)


def phase(t, x, y, z):
    """varpi(t) = y (1 + t**2) + i (x + z t) sqrt(1 + t**2) for complex t."""
    t = np.asarray(t, dtype=np.complex128)
    tt = 1.0 + t * t
    return y * tt + 1j * (x + z * t) * np.sqrt(tt)


# --------------------------------------------------------------------------
# weights
# --------------------------------------------------------------------------


def _kappa(n):
    j = np.arange(n, dtype=np.float64)
    j = np.minimum(j, n - j)
    return 1.0 / (1.0 - 4.0 * j * j)


def _check_n(n):
    if int(n) != n or n < 2 or n % 2:
        raise DomainError(f"Clenshaw-Curtis order must be an even integer >= 2, got {n!r}")
    return int(n)


@lru_cache(maxsize=40)
def cc_weights(n: int) -> CCWeights:
    """Weights for the n + 1 nodes cos(k pi / n), from one DFT of kappa."""
    n = _check_n(n)
    v = (2.0 / n) * dft(_kappa(n)).real
    w = np.empty(n + 1)
    w[:n] = v
    w[0] = w[n] = 0.5 * v[0]
    w.setflags(write=False)
    return CCWeights(n, w)


def cc_weights_direct(n: int) -> np.ndarray:
    """O(n**2) reference: w_k = (2/n) c_k sum_j kappa_j cos(2 pi j k / n)."""
    n = _check_n(n)
    kappa = _kappa(n)
    k = np.arange(n + 1)
    j = np.arange(n)
    cos = np.cos(2.0 * np.pi * ((np.outer(k, j)) % n) / n)
    w = (2.0 / n) * cos @ kappa
    w[0] *= 0.5
    w[n] *= 0.5
    return w


def cc_nodes(n: int) -> np.ndarray:
    """Nodes cos(k pi / n), k = 0..n (descending from 1 to -1)."""
    n = _check_n(n)
    return np.cos(np.arange(n + 1) * (math.pi / n))


def _check_finite(values, angles):
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise NonFiniteIntegrandError(float(np.cos(angles[i])), complex(values[i]))


def cc_apply(w: CCWeights, f) -> complex:
    """F_n(f) = sum_k w_k f(t_k).

    ``f`` is either a callable on node arrays or the values at the n + 1
    nodes.
    """
    if callable(f):
        values = np.asarray(f(cc_nodes(w.n)), dtype=np.complex128)
    else:
        values = np.asarray(f, dtype=np.complex128)
    if values.shape != (w.n + 1,):
        raise DomainError(f"expected {w.n + 1} integrand values, got shape {values.shape}")
    _check_finite(values, np.arange(w.n + 1) * (math.pi / w.n))
    return complex(w.weights @ values)


# --------------------------------------------------------------------------
# nested driver
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class _Piece:
    value: complex
    level: int
    n: int
    converged: bool
    cauchy: float


def _cauchy(f):
    a, b, c = f[-3], f[-2], f[-1]
    return max(RESERVE * abs(c - b), abs(c - a), abs(b - a))


def nested_cc(integrand: Callable[[np.ndarray], np.ndarray], eps: float, caps: CCCaps = CCCaps()) -> _Piece:
    """Run the nested rule on ``integrand(angles)``, angles = k pi / n.

    The integrand receives node angles rather than nodes so that 1 -+ cos can
    be formed without cancellation.  Values from coarser levels are reused.
    """
    n = caps.n0
    angles = np.arange(n + 1) * (math.pi / n)
    values = np.asarray(integrand(angles), dtype=np.complex128)
    _check_finite(values, angles)
    history = [complex(cc_weights(n).weights @ values)]
    level = 0
    while True:
        if level >= 2:
            cauchy = _cauchy(history)
            if cauchy <= eps:
                return _Piece(history[-1], level, n, True, cauchy)
        if level == caps.max_level:
            return _Piece(history[-1], level, n, False, _cauchy(history))
        n *= 2
        level += 1
        fresh_angles = np.arange(1, n, 2) * (math.pi / n)
        fresh = np.asarray(integrand(fresh_angles), dtype=np.complex128)
        _check_finite(fresh, fresh_angles)
        merged = np.empty(n + 1, dtype=np.complex128)
        merged[::2] = values
        merged[1::2] = fresh
        values = merged
        history.append(complex(cc_weights(n).weights @ values))


# --------------------------------------------------------------------------
# integrals of I and J
# --------------------------------------------------------------------------


class _Tracker:
    """Largest Re(varpi) seen, for the decay check."""

    def __init__(self):
        self.max_re = -math.inf

    def see(self, w):
        if w.size:
            self.max_re = max(self.max_re, float(np.max(w.real)))


def _ray_integrand(p, plan, weight, tracker):
    # t = t* + s e^{i theta}, s = cot^2(a/2) = (1+u)/(1-u), ds/du = 1 / (2 sin^4(a/2))
    rot = complex(math.cos(plan.theta), math.sin(plan.theta))

    def f(angles):
        half = 0.5 * angles
        sn = np.sin(half)
        out = np.zeros(angles.shape, dtype=np.complex128)
        inner = sn > 0.0
        sn = sn[inner]
        s = (np.cos(half[inner]) / sn) ** 2
        t = plan.t_star + s * rot
        w = phase(t, p.x, p.y, p.z)
        tracker.see(w)
        vals = np.exp(w) * (rot * 0.5 / sn**4)
        if weight is not None:
            vals = vals * weight(t)
        out[inner] = vals
        return out

    return f


def _segment_integrand(p, plan, weight, tracker):
    # t = t* (1 + u) / 2 = t* cos^2(a/2) on the real segment
    half_len = 0.5 * plan.t_star

    def f(angles):
        t = plan.t_star * np.cos(0.5 * angles) ** 2
        w = phase(t, p.x, p.y, p.z)
        tracker.see(w)
        vals = np.exp(w) * half_len
        if weight is not None:
            vals = vals * weight(t.astype(np.complex128))
        return vals

    return f


def _check_domain(p: FieldPoint):
    if p.x > 0.0:
        raise DomainError(f"x must be <= 0, got {p.x}")
    if p.y > 0.0:
        raise DomainError(f"y must be <= 0, got {p.y}")
    if p.y == 0.0 and p.z == 0.0:
        raise DegeneratePointError("y = z = 0 is degenerate for the contour rotation")


def _check_eps(eps):
    if not (eps > 0.0 and math.isfinite(eps)):
        raise DomainError(f"tolerance must be positive and finite, got {eps!r}")


def integrate_weighted(
    p,
    eps: float,
    weight: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    caps: CCCaps = CCCaps(),
) -> CCResult:
    """Integral of weight(t) e^{varpi(t)} over the half-line (weight 1 if None)."""
    p = as_point(p)
    _check_domain(p)
    _check_eps(eps)
    plan = contour_plan(p)
    tracker = _Tracker()
    pieces: Sequence[_Piece]
    if plan.split:
        pieces = (
            nested_cc(_segment_integrand(p, plan, weight, tracker), eps, caps),
            nested_cc(_ray_integrand(p, plan, weight, tracker), eps, caps),
        )
    else:
        pieces = (nested_cc(_ray_integrand(p, plan, weight, tracker), eps, caps),)
    return CCResult(
        value=sum((q.value for q in pieces), 0j),
        eval_count=sum(q.n for q in pieces) + len(pieces),
        level=max(q.level for q in pieces),
        converged=all(q.converged for q in pieces),
        levels=tuple(q.level for q in pieces),
        error_estimate=sum(q.cauchy for q in pieces),
        max_re_phase=tracker.max_re,
    )


def integrate_I(p, eps: float, caps: CCCaps = CCCaps()) -> CCResult:
    """I(x, y, z) by nested Clenshaw-Curtis on the steepest-descent contour.

    Parameters
    ----------
    p : FieldPoint or (x, y, z)
        x <= 0, y <= 0 and y + iz != 0.
    eps : float
        Tolerance of the termination rule, applied to each integral.
    caps : CCCaps
        First rule size and deepest level.

    Returns
    -------
    CCResult
        ``converged`` is False when the deepest level was reached first; the
        last value is still returned.
    """
    return integrate_weighted(p, eps, None, caps)
