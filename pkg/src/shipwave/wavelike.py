"""Public evaluation API: validation, dispatch and assembly of I_inf.

    I_inf(x, y, z) = H(-x) / pi * Im[I(x, y, z) + I(x, y, -z)]

with y the combined depth y + y0.  H(0) is taken as 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from . import levin
from .clenshaw_curtis import CCCaps, integrate_I, steepest_angle
from .derivatives import as_direction, deriv_cc, deriv_levin, deriv_levin_adaptive
from .errors import DegeneratePointError, DomainError, TrackSingularityError
from .point import FieldPoint, as_point

__all__ = [
    "METHODS",
    "EvalConfig",
    "EvalReport",
    "closed_form_axis",
    "critical_points",
    "eval_I",
    "eval_I_infinity",
    "eval_J",
]

METHODS = ("auto", "levin", "levin-plain", "levin-corrected", "cc")
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class EvalConfig:
    """Engine selection and tolerances.

    Attributes
    ----------
    method : str
        One of :data:`METHODS`.  "levin" picks the plain or corrected scheme
        by :func:`shipwave.levin.prefers_correction`.
    eps : float
        Target accuracy for CC and for the Levin doubling loop.
    m : int, optional
        Fixed Levin order; None runs the doubling loop.
    m_start, m_max : int
        Range of the doubling loop.
    levin_y_max, levin_d_max : float
        Auto mode uses Levin when y <= levin_y_max and D <= levin_d_max.
    caps : CCCaps
        Level limits for Clenshaw-Curtis.
    """

    method: str = "auto"
    eps: float = 1e-10
    m: Optional[int] = None
    m_start: int = 25
    m_max: int = levin.M_MAX
    levin_y_max: float = -0.05
    levin_d_max: float = 40.0
    caps: CCCaps = field(default_factory=CCCaps)

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"method must be one of {METHODS}, got {self.method!r}")
        if not (self.eps > 0.0 and math.isfinite(self.eps)):
            raise DomainError(f"eps must be positive, got {self.eps!r}")
        if self.m is not None and (int(self.m) != self.m or self.m < 2):
            raise DomainError(f"m must be an integer >= 2, got {self.m!r}")


@dataclass(frozen=True)
class EvalReport:
    """Value plus diagnostics.

    ``eval_count`` is the number of integrand evaluations for CC and the
    number of collocation nodes (m + 1) of the final solve for Levin.
    """

    value: complex
    method: str
    error_estimate: float
    eval_count: int
    d_param: float
    theta: float
    critical_points: Tuple[float, ...]
    converged: bool = True
    order: Optional[int] = None


def closed_form_axis(y: float) -> float:
    """I(0, y, 0) = sqrt(pi)/2 e^y / sqrt(-y) for y < 0."""
    y = float(y)
    if not y < 0.0:
        raise DomainError(f"closed form needs y < 0, got {y}")
    return 0.5 * _SQRT_PI * math.exp(y) / math.sqrt(-y)


def critical_points(p) -> Tuple[float, ...]:
    """Stationary points t = -x/(4z) +- sqrt((x/(4z))**2 - 1/2) of the phase.

    They exist for z > 0 and x <= -2 sqrt(2) z; a double root is returned once.
    """
    p = as_point(p)
    if not p.z > 0.0:
        return ()
    c = -p.x / (4.0 * p.z)
    disc = c * c - 0.5
    if disc < -1e-14 * max(c * c, 1.0):
        return ()
    if disc <= 1e-14 * max(c * c, 1.0):
        return (c,) if c > 0.0 else ()
    r = math.sqrt(disc)
    return tuple(t for t in (c - r, c + r) if t >= 0.0)


def _validate(p: FieldPoint):
    if p.x > 0.0:
        raise DomainError(f"x must be <= 0, got {p.x}")
    if p.y > 0.0:
        raise DomainError(f"y must be <= 0, got {p.y}")
    if p.y == 0.0 and p.z == 0.0:
        if p.x < 0.0:
            raise TrackSingularityError(f"({p.x}, 0, 0) lies on the source track")
        raise DegeneratePointError("I(0, 0, 0) diverges")


def _theta(p):
    return steepest_angle(p.y, p.z)


def _report(p, value, method, err, count, converged=True, order=None):
    return EvalReport(
        value=complex(value),
        method=method,
        error_estimate=float(err),
        eval_count=int(count),
        d_param=p.d_param,
        theta=_theta(p),
        critical_points=critical_points(p),
        converged=bool(converged),
        order=order,
    )


def _levin_variant(cfg, p):
    if cfg.method == "levin-plain":
        return "plain"
    if cfg.method == "levin-corrected":
        return "corrected"
    if cfg.method == "levin":
        return "auto"
    return "corrected"  # auto dispatch


def _run_levin(p, cfg):
    variant = _levin_variant(cfg, p)
    if cfg.m is not None:
        res = levin.solve(p, cfg.m, variant=variant)
        ok = True
    else:
        res, ok = levin.solve_adaptive(p, cfg.eps, m_start=cfg.m_start, m_max=cfg.m_max, variant=variant)
    method = "levin_corrected" if res.corrected else "levin_plain"
    return _report(p, res.value, method, res.error_estimate, res.m + 1, ok, res.m)


def _run_cc(p, cfg):
    res = integrate_I(p, cfg.eps, cfg.caps)
    return _report(p, res.value, "cc", res.error_estimate, res.eval_count, res.converged)


def _auto_levin(p, cfg):
    return p.y <= cfg.levin_y_max and p.d_param <= cfg.levin_d_max


def eval_I(p, cfg: EvalConfig = EvalConfig()) -> EvalReport:
    """I(x, y, z) with the configured engine.

    x = z = 0 uses the closed form.  In auto mode the corrected Levin scheme
    with doubling is tried for y <= -0.05 and D <= 40 and CC is used when it
    does not converge or the point is outside that region.

    Raises
    ------
    TrackSingularityError
        For y = z = 0, x < 0.
    DomainError
        For x > 0 or y > 0.
    """
    p = as_point(p)
    _validate(p)
    if p.x == 0.0 and p.z == 0.0:
        return _report(p, closed_form_axis(p.y), "closed_form", 0.0, 0)
    if cfg.method == "cc":
        return _run_cc(p, cfg)
    if cfg.method == "auto":
        if _auto_levin(p, cfg):
            rep = _run_levin(p, cfg)
            if rep.converged:
                return rep
        return _run_cc(p, cfg)
    return _run_levin(p, cfg)


def eval_I_infinity(x: float, y_sum: float, z: float, cfg: EvalConfig = EvalConfig()) -> EvalReport:
    """pi**-1 H(-x) Im[I(x, y, z) + I(x, y, -z)] with y = y + y0 combined.

    Returns 0 without evaluating I when x >= 0.  The two members are always
    evaluated at +|z| and -|z| in that order, so the result is exactly even
    in z.
    """
    p = FieldPoint(x, y_sum, z)
    if p.y > 0.0:
        raise DomainError(f"y + y0 must be <= 0, got {p.y}")
    if p.x >= 0.0:
        return EvalReport(0.0, "closed_form", 0.0, 0, p.d_param, _theta_or_zero(p), ())
    up = eval_I(FieldPoint(p.x, p.y, abs(p.z)), cfg)
    if p.z == 0.0:
        down = up
    else:
        down = eval_I(FieldPoint(p.x, p.y, -abs(p.z)), cfg)
    value = (up.value.imag + down.value.imag) / math.pi
    method = up.method if up.method == down.method else f"{up.method}+{down.method}"
    return EvalReport(
        value=value,
        method=method,
        error_estimate=(up.error_estimate + down.error_estimate) / math.pi,
        eval_count=up.eval_count + down.eval_count,
        d_param=p.d_param,
        theta=abs(up.theta),
        critical_points=critical_points(FieldPoint(p.x, p.y, abs(p.z))),
        converged=up.converged and down.converged,
    )


def _theta_or_zero(p):
    try:
        return _theta(p)
    except DegeneratePointError:
        return 0.0


def eval_J(p, d, cfg: EvalConfig = EvalConfig()) -> EvalReport:
    """Directional derivative grad I . l.

    Levin is only offered for y < 0; y = 0 always goes to CC.
    """
    p, d = as_point(p), as_direction(d)
    _validate(p)
    use_levin = cfg.method != "cc" and p.y < 0.0
    if cfg.method == "auto":
        use_levin = _auto_levin(p, cfg)
    elif cfg.method != "cc" and not p.y < 0.0:
        raise DomainError("Levin derivatives need y < 0; use method 'cc'")
    if use_levin:
        corrected = cfg.method in ("auto", "levin", "levin-corrected")
        if cfg.m is not None:
            res, ok = deriv_levin(p, d, cfg.m, corrected=corrected), True
        else:
            res, ok = deriv_levin_adaptive(p, d, cfg.eps, m_start=cfg.m_start, m_max=cfg.m_max, corrected=corrected)
        if ok or cfg.method != "auto":
            method = "levin_corrected" if corrected else "levin_plain"
            return _report(p, res.value, method, res.error_estimate, res.m + 1, ok, res.m)
    res = deriv_cc(p, d, cfg.eps, cfg.caps)
    return _report(p, res.value, "cc", res.error_estimate, res.eval_count, res.converged)
