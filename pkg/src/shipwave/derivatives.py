"""Directional derivatives J(l, x) = grad I . l.

Differentiating under the integral sign gives

    J = integral_0^inf varpi(t, l1, l2, l3) exp(varpi(t, x, y, z)) dt,

which the Clenshaw-Curtis driver handles with an extra polynomial weight.  For
y < 0 the Levin form applies as well: with Phi_l the bounded solution of

    (1 - tau)**3 Phi' + [(1 - tau)**2 + sigma] Phi = varpi_o(tau, l),

J = -Phi_l(0) exp(y + ix), where varpi_o = (1 - tau)**2 varpi(tau/(1-tau), l).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


import numpy as np

from . import levin
from .clenshaw_curtis import CCCaps, CCResult, integrate_weighted, phase
from .errors import DomainError
from .levin import LevinResult, _Problem, _estimate, _solve
from .point import as_point

__all__ = [
    "Direction",
    "UNIT_DIRECTIONS",
    "as_direction",
    "varpi_circ",
    "deriv_phi_at_one",
    "deriv_hat_phi",
    "deriv_lhat",
    "deriv_cc",
    "deriv_levin",
    "deriv_levin_adaptive",
    "gradient_cc",
]

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class Direction:
    """Direction vector (l1, l2, l3); finite and not all zero."""

    l1: float
    l2: float
    l3: float

    def __post_init__(self):
        vals = []
        for name in ("l1", "l2", "l3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
            vals.append(v)
        if not any(vals):
            raise DomainError("direction must not be the zero vector")

    @property
    def c0(self) -> complex:
        """varpi_o(1, l) = l2 + i l3."""
        return complex(self.l2, self.l3)


UNIT_DIRECTIONS = (Direction(1, 0, 0), Direction(0, 1, 0), Direction(0, 0, 1))


def as_direction(d) -> Direction:
    if isinstance(d, Direction):
        return d
    l1, l2, l3 = d
    return Direction(l1, l2, l3)


def varpi_circ(tau, d):
    """(1 - tau)**2 varpi(tau / (1 - tau), l) = l2 r**2 + i (l1 (1 - tau) + l3 tau) r."""
    d = as_direction(d)
    t = np.asarray(tau, dtype=np.float64)
    r2 = 2.0 * t * t - 2.0 * t + 1.0
    out = d.l2 * r2 + 1j * (d.l1 * (1.0 - t) + d.l3 * t) * np.sqrt(r2)
    return complex(out) if out.ndim == 0 else out


def _require_deriv_levin(p):
    p.require_wave_domain()
    if not p.y < 0.0:
        raise DomainError(f"the Levin derivative scheme needs y < 0, got y = {p.y}")


def deriv_phi_at_one(p, d) -> complex:
    """(l2 + i l3) / (2 (y + iz))."""
    p, d = as_point(p), as_direction(d)
    return d.c0 / (2.0 * complex(p.y, p.z))


def deriv_hat_phi(tau, p, d):
    """Leading term of Phi_l near tau = 1, through the Faddeeva function.

    c0 (tau - 1) [sqrt(pi) (g1**2 + 2 g2) / (8 g**5) w(eta) + (g1 + 2 g2/(1-tau)) / (4 g2**2)]
    with g = sqrt(g2) and the same eta as :func:`shipwave.levin.hat_phi`.
    """
    p, d = as_point(p), as_direction(d)
    t, end = levin._split_endpoint(tau)
    out = np.empty(t.shape, dtype=np.complex128)
    inner = t[~end]
    if inner.size:
        eta, g, c = levin._faddeeva_argument(inner, p)
        g1, g2 = c.gamma1, c.gamma2
        s = 1.0 / (1.0 - inner)
        w = levin.faddeeva_w(eta)
        bracket = _SQRT_PI * (g1 * g1 + 2.0 * g2) / (8.0 * g**5) * w + (g1 + 2.0 * g2 * s) / (4.0 * g2 * g2)
        out[~end] = d.c0 * (inner - 1.0) * bracket
    out[end] = deriv_phi_at_one(p, d)
    return out[0] if np.ndim(tau) == 0 else out


def deriv_lhat(tau, p, d):
    """Image of deriv_hat_phi under the derivative operator: c0 + hat_phi_l F(tau)."""
    p, d = as_point(p), as_direction(d)
    t, end = levin._split_endpoint(tau)
    out = d.c0 + deriv_hat_phi(t, p, d) * levin._hat_factor(t, p)
    out[end] = d.c0
    return out[0] if np.ndim(tau) == 0 else out


def _problem(p, d, corrected):
    rhs = lambda t: varpi_circ(t, d)  # noqa: E731
    if corrected:
        return _Problem(
            p, 1.0, rhs, lambda t: deriv_hat_phi(t, p, d), lambda t: deriv_lhat(t, p, d), residual_bound=False
        )
    return _Problem(p, 1.0, rhs, residual_bound=False)


def deriv_levin(p, d, m: int, *, corrected: bool = False, estimate: bool = True) -> LevinResult:
    """J(l, x) by collocation of the derivative equation (y < 0 only).

    The error estimate reuses the residual correction solve; only the
    ||R|| branch is used since the alternative bound was derived for the
    right-hand side 1.
    """
    p, d = as_point(p), as_direction(d)
    _require_deriv_levin(p)
    m = levin._check_order(m)
    problem = _problem(p, d, corrected)
    phi, value = _solve(problem, m)
    err = _estimate(problem, m, phi) if estimate else None
    return LevinResult(m=m, phi_values=phi, value=value, error_estimate=err, corrected=corrected)


def deriv_levin_adaptive(p, d, eps: float, *, m_start: int = 25, m_max: int = levin.M_MAX, corrected: bool = False):
    """Double m until the estimate meets ``eps``; returns ``(result, converged)``."""
    m = levin._check_order(m_start)
    while True:
        res = deriv_levin(p, d, m, corrected=corrected)
        if res.error_estimate <= eps:
            return res, True
        if 2 * m > m_max:
            return res, False
        m *= 2


def deriv_cc(p, d, eps: float, caps: CCCaps = CCCaps()) -> CCResult:
    """J(l, x) with the contour and termination rule of :func:`integrate_I`."""
    d = as_direction(d)
    return integrate_weighted(p, eps, lambda t: phase(t, d.l1, d.l2, d.l3), caps)


def gradient_cc(p, eps: float, caps: CCCaps = CCCaps()):
    """(dI/dx, dI/dy, dI/dz) and the three CC results."""
    results = tuple(deriv_cc(p, e, eps, caps) for e in UNIT_DIRECTIONS)
    return np.array([r.value for r in results]), results
