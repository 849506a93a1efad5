"""Levin-type evaluation of I(x, y, z) by barycentric collocation.

With t = tau / (1 - tau) the integral becomes I = -Phi(0) exp(y + ix), where
Phi is the bounded solution of

    (1 - tau)**3 Phi' + [sigma(tau) - (1 - tau)**2] Phi = 1   on [0, 1].

Phi is sought as a barycentric interpolant on second-kind Chebyshev points and
the equation is collocated at the same points.  The "corrected" variant adds
the closed-form leading term phi_hat(tau) (built from the Faddeeva function)
and solves for the remainder only.  The residual estimator re-solves the
equation for the error, driven by the residual at first-kind points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .chebyshev import bary_derivative, bary_eval, diff_matrix, grid_first_kind, grid_second_kind
from .errors import DegeneratePointError, DomainError
from .numerics import lu_solve
from .point import FieldPoint, as_point
from .special import faddeeva_w

__all__ = [
    "LevinCoefficients",
    "LevinResult",
    "sigma",
    "levin_coefficients",
    "phi_at_one",
    "assemble_system",
    "hat_phi",
    "lhat",
    "critical_tau",
    "prefers_correction",
    "solve_plain",
    "solve_corrected",
    "solve",
    "solve_adaptive",
    "error_estimate",
]

_SQRT_PI = math.sqrt(math.pi)
M_MAX = 1600


@dataclass(frozen=True)
class LevinCoefficients:
    """Expansion Lambda ~ gamma2/(tau-1)**2 + gamma1/(tau-1) + gamma0 near tau = 1."""

    gamma0: complex
    gamma1: complex
    gamma2: complex


@dataclass(frozen=True)
class LevinResult:
    """Outcome of one collocation solve.

    ``phi_values`` holds the polynomial part at the nodes; for a corrected
    solve the full solution is ``phi_values + hat_phi(nodes)``.
    ``error_estimate`` is None when the estimator was skipped.
    """

    m: int
    phi_values: np.ndarray
    value: complex
    error_estimate: Optional[float]
    corrected: bool


def _radical(tau):
    return np.sqrt(2.0 * tau * tau - 2.0 * tau + 1.0)


def sigma(tau, p):
    """sigma(tau) = (1 - tau)**3 times the tau-derivative of the phase."""
    p = as_point(p)
    t = np.asarray(tau, dtype=np.float64)
    r = _radical(t)
    out = 1j * p.x * t * (1.0 - t) / r + 2.0 * p.y * t + 1j * p.z * (3.0 * t * t - 2.0 * t + 1.0) / r
    return complex(out) if out.ndim == 0 else out


def levin_coefficients(p) -> LevinCoefficients:
    p = as_point(p)
    return LevinCoefficients(
        gamma0=complex(0.0, p.x - 1.5 * p.z),
        gamma1=complex(-2.0 * p.y, p.x - 2.0 * p.z),
        gamma2=complex(-p.y, -p.z),
    )


def _require_levin_domain(p):
    if p.y == 0.0 and p.z == 0.0:
        raise DegeneratePointError("Levin ODE is degenerate for y = z = 0")
    if p.y > 0.0:
        raise DomainError(f"y must be <= 0, got {p.y}")


def phi_at_one(p) -> complex:
    """Value of the bounded solution at tau = 1: 1 / (2 (y + iz))."""
    p = as_point(p)
    _require_levin_domain(p)
    return 1.0 / (2.0 * complex(p.y, p.z))


def _operator_matrix(grid, p, sign):
    """Collocation matrix of (1-tau)**3 d/dtau + sigma + sign (1-tau)**2."""
    t = grid.nodes
    one = 1.0 - t
    a = (one**3)[:, None] * diff_matrix(grid)
    a = a.astype(np.complex128)
    a[np.diag_indices_from(a)] += sigma(t, p) + sign * one**2
    return a


def assemble_system(p, m: int) -> np.ndarray:
    """Matrix A of the collocation system on the order-m second-kind grid."""
    p = as_point(p)
    _require_levin_domain(p)
    return _operator_matrix(grid_second_kind(m), p, -1.0)


# --------------------------------------------------------------------------
# closed-form leading term
# --------------------------------------------------------------------------


def _faddeeva_argument(t, p):
    """eta(tau) = i g / (1 - tau) - i gamma1 / (2 g), g = principal sqrt(gamma2)."""
    c = levin_coefficients(p)
    g = cmath.sqrt(c.gamma2)
    return 1j * g / (1.0 - t) - 1j * c.gamma1 / (2.0 * g), g, c


def _split_endpoint(tau):
    t = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    if np.any((t < 0.0) | (t > 1.0)):
        raise DomainError("tau must lie in [0, 1]")
    return t, t == 1.0


def hat_phi(tau, p):
    """Leading term sqrt(pi) / (2 (tau - 1) g) * w(eta(tau)) of the bounded solution.

    At tau = 1 the limit 1 / (2 (y + iz)) is returned.
    """
    p = as_point(p)
    _require_levin_domain(p)
    t, end = _split_endpoint(tau)
    out = np.empty(t.shape, dtype=np.complex128)
    inner = t[~end]
    if inner.size:
        eta, g, _ = _faddeeva_argument(inner, p)
        out[~end] = _SQRT_PI / (2.0 * (inner - 1.0) * g) * faddeeva_w(eta)
    out[end] = phi_at_one(p)
    return out[0] if np.ndim(tau) == 0 else out


def _hat_factor(t, p):
    # (1-tau)**3 Lambda0' + sigma, where Lambda0 is the truncated expansion
    c = levin_coefficients(p)
    return sigma(t, p) + 2.0 * c.gamma2 - c.gamma1 * (1.0 - t)


def lhat(tau, p):
    """Image of hat_phi under the Levin operator: 1 + hat_phi * F(tau).

    F vanishes at tau = 1, so the endpoint value is exactly 1.
    """
    p = as_point(p)
    t, end = _split_endpoint(tau)
    out = 1.0 + hat_phi(t, p) * _hat_factor(t, p)
    out[end] = 1.0
    return out[0] if np.ndim(tau) == 0 else out


def critical_tau(p) -> Optional[float]:
    """Root in [0, 1] of Im sigma(tau) = 0 where the solution develops peaks, if any."""
    p = as_point(p)
    disc = p.x * p.x - 8.0 * p.z * p.z
    denom = 6.0 * p.z - 2.0 * p.x
    if disc < 0.0 or denom == 0.0:
        return None
    tau = (2.0 * p.z - p.x + math.sqrt(disc)) / denom
    return tau if 0.0 <= tau <= 1.0 else None


def prefers_correction(p, threshold: float = 0.9) -> bool:
    """Use hat_phi when y = 0 and the critical tau is close to 1."""
    p = as_point(p)
    if p.y != 0.0:
        return False
    tau = critical_tau(p)
    return tau is not None and tau > threshold


# --------------------------------------------------------------------------
# generic solver shared with the derivative scheme
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class _Problem:
    """(1-tau)**3 Phi' + [sigma + sign (1-tau)**2] Phi = rhs(tau), J = -Phi(0) e^{y+ix}."""

    point: FieldPoint
    sign: float
    rhs: Callable[[np.ndarray], np.ndarray]
    correction: Optional[Callable[[np.ndarray], np.ndarray]] = None
    correction_image: Optional[Callable[[np.ndarray], np.ndarray]] = None
    residual_bound: bool = True

    def effective_rhs(self, t):
        b = np.asarray(self.rhs(t), dtype=np.complex128)
        if self.correction_image is not None:
            b = b - self.correction_image(t)
        return b


def _solve(problem: _Problem, m: int):
    p = problem.point
    grid = grid_second_kind(m)
    a = _operator_matrix(grid, p, problem.sign)
    phi = lu_solve(a, problem.effective_rhs(grid.nodes))
    phi0 = phi[0]
    if problem.correction is not None:
        phi0 = phi0 + problem.correction(np.zeros(1))[0]
    value = -phi0 * cmath.exp(complex(p.y, p.x))
    return phi, complex(value)


def _estimate(problem: _Problem, m: int, phi: np.ndarray) -> float:
    p = problem.point
    grid = grid_second_kind(m)
    check = grid_first_kind(m - 1)
    tc = check.nodes
    one = 1.0 - tc
    values = bary_eval(grid, phi, tc)
    slopes = bary_derivative(grid, phi, tc)
    resid = one**3 * slopes + (sigma(tc, p) + problem.sign * one**2) * values - problem.effective_rhs(tc)
    err = lu_solve(_operator_matrix(check, p, problem.sign), resid)
    bound = float(np.max(np.abs(err)))
    if problem.residual_bound and p.y < 0.0:
        bound = min(bound, 0.5 * math.sqrt(math.pi / abs(p.y)) * float(np.max(np.abs(resid))))
    return math.exp(p.y) * bound


def _ones(t):
    return np.ones(np.shape(t), dtype=np.complex128)


def _problem(p, corrected):
    if corrected:
        return _Problem(p, -1.0, _ones, lambda t: hat_phi(t, p), lambda t: lhat(t, p))
    return _Problem(p, -1.0, _ones)


def _check_order(m):
    if int(m) != m or m < 2:
        raise DomainError(f"order m must be an integer >= 2, got {m!r}")
    return int(m)


def _run(p, m, corrected, estimate):
    p = as_point(p)
    p.require_wave_domain()
    m = _check_order(m)
    problem = _problem(p, corrected)
    phi, value = _solve(problem, m)
    err = _estimate(problem, m, phi) if estimate else None
    return LevinResult(m=m, phi_values=phi, value=value, error_estimate=err, corrected=corrected)


def solve_plain(p, m: int, *, estimate: bool = True) -> LevinResult:
    """Collocation solve with right-hand side 1; value = -Phi_0 e^{y+ix}."""
    return _run(p, m, False, estimate)


def solve_corrected(p, m: int, *, estimate: bool = True) -> LevinResult:
    """Collocation solve for Phi - hat_phi; value = -(Phi_0 + hat_phi(0)) e^{y+ix}."""
    return _run(p, m, True, estimate)


def solve(p, m: int, *, variant: str = "auto", estimate: bool = True) -> LevinResult:
    """Dispatch between the plain and corrected schemes.

    ``variant`` is "plain", "corrected" or "auto" (see :func:`prefers_correction`).
    """
    if variant == "auto":
        corrected = prefers_correction(as_point(p))
    elif variant in ("plain", "corrected"):
        corrected = variant == "corrected"
    else:
        raise DomainError(f"unknown Levin variant {variant!r}")
    return _run(p, m, corrected, estimate)


def solve_adaptive(p, eps: float, *, m_start: int = 25, m_max: int = M_MAX, variant: str = "auto"):
    """Double m from ``m_start`` until the error estimate drops below ``eps``.

    Returns ``(result, converged)``; the last result is returned when
    ``m_max`` is reached without meeting the tolerance.
    """
    m = _check_order(m_start)
    while True:
        res = solve(p, m, variant=variant, estimate=True)
        if res.error_estimate <= eps:
            return res, True
        if 2 * m > m_max:
            return res, False
        m *= 2


def error_estimate(p, m: int, result: LevinResult) -> float:
    """Residual-based bound e^y min(||R||, sqrt(pi/|y|)/2 ||r||) for ``result``."""
    p = as_point(p)
    if len(result.phi_values) != m + 1:
        raise DomainError("result does not belong to order m")
    return _estimate(_problem(p, result.corrected), m, result.phi_values)
