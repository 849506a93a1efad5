"""Independent reference values of I and J for validation.

Adaptive Gauss-Legendre bisection on the rotated contour.  Each panel is
integrated with 10- and 20-point rules; a panel is accepted when the two agree
to its share of the tolerance, or when their difference is already at the
rounding level set by the integrand and its phase (so tolerances below the
attainable accuracy do not trigger endless bisection).  Sums are compensated
with ``math.fsum``.  The ray is cut where |integrand| < 1e-18 and a bound for
the discarded tail is added to the reported error.

Nothing here is shared with the production engines: the contour angle, the
split point and the phase are recomputed locally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegeneratePointError, DomainError, OracleDepthError

__all__ = ["OracleConfig", "OracleResult", "oracle_I", "oracle_J", "oracle_integrate"]

_CUTOFF = 1e-18
_MAX_PANELS = 2**22
# panels whose rule difference is at the rounding level are accepted
_ROUNDOFF = 64.0 * np.finfo(np.float64).eps


@dataclass(frozen=True)
class OracleConfig:
    """Absolute tolerance and subdivision limits.

    ``panel_rule`` names the embedded pair (only "gauss10-20").
    """

    abs_tol: float = 1e-13
    max_depth: int = 48
    panel_rule: str = "gauss10-20"

    def __post_init__(self):
        if not self.abs_tol >= 1e-13:
            raise DomainError(f"abs_tol must be >= 1e-13, got {self.abs_tol!r}")
        if not 1 <= self.max_depth <= 60:
            raise DomainError(f"max_depth must be in [1, 60], got {self.max_depth!r}")
        if self.panel_rule != "gauss10-20":
            raise DomainError(f"unknown panel rule {self.panel_rule!r}")


@dataclass(frozen=True)
class OracleResult:
    value: complex
    error_bound: float
    panels: int


@lru_cache(maxsize=None)
def _rule(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _phase(t, x, y, z):
    q = 1.0 + t * t
    return y * q + 1j * (x + z * t) * np.sqrt(q)


def _geometry(x, y, z):
    # steepest-descent angle: 2 theta = arg(-y + iz)
    theta = 0.5 * math.atan2(z, -y)
    ts = 0.0
    if z > 0.0:
        ts = -x * math.sin(theta) / (2.0 * (-y * math.cos(theta) + z * math.sin(theta)))
    return theta, ts


def _gauss(f, a, b):
    """G20 value, |G20 - G10| and the roundoff floor.

    ``f`` returns values and a magnitude |f| (1 + |varpi|) that bounds the
    effect of rounding in a large phase.
    """
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x10, w10 = _rule(10)
    x20, w20 = _rule(20)
    v20, mag = f(mid + half * x20)
    g10 = half * complex(np.dot(w10, f(mid + half * x10)[0]))
    g20 = half * complex(np.dot(w20, v20))
    floor = _ROUNDOFF * half * float(np.dot(w20, mag))
    return g20, abs(g20 - g10), floor


def _adaptive(f, a, b, tol, max_depth, budget):
    """Bisect [a, b] until each panel meets tol * length / (b - a)."""
    length = b - a
    if length <= 0.0:
        return 0j, 0.0, 0, False
    re, im, errs = [], [], []
    first = max(1, min(4096, int(math.ceil(length))))
    edges = np.linspace(a, b, first + 1)
    stack = [(edges[i], edges[i + 1], 0) for i in range(first - 1, -1, -1)]
    panels = 0
    exhausted = False
    while stack:
        lo, hi, depth = stack.pop()
        val, err, floor = _gauss(f, lo, hi)
        share = max(tol * (hi - lo) / length, floor)
        if err <= share or depth >= max_depth or panels + len(stack) >= budget:
            if err > share:
                exhausted = True
            re.append(val.real)
            im.append(val.imag)
            errs.append(err)
            panels += 1
            continue
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    value = complex(math.fsum(re), math.fsum(im))
    return value, math.fsum(errs), panels, exhausted


def _truncation(g, start=1.0):
    """Smallest tried s with |g(s)| < cutoff and log|g| decreasing beyond it."""
    s = start
    for _ in range(200):
        h = 1e-6 * s
        m0, m1 = abs(g(np.array([s]))[0][0]), abs(g(np.array([s + h]))[0][0])
        if m0 < _CUTOFF and m1 <= m0:
            if m0 == 0.0:
                return s, 0.0
            slope = (math.log(m0) - math.log(max(m1, 1e-300))) / h
            return s, m0 / max(slope, 1e-300)
        s *= 1.5
    raise OracleDepthError(complex("nan"), math.inf)


def oracle_integrate(x, y, z, weight=None, cfg: OracleConfig = OracleConfig()) -> OracleResult:
    """Integral of weight(t) exp(varpi(t)) over [0, inf) on the rotated contour."""
    x, y, z = float(x), float(y), float(z)
    if x > 0.0 or y > 0.0:
        raise DomainError("oracle needs x <= 0 and y <= 0")
    if y == 0.0 and z == 0.0:
        raise DegeneratePointError("oracle undefined for y = z = 0")
    theta, ts = _geometry(x, y, z)
    rot = complex(math.cos(theta), math.sin(theta))

    def wrap(tmap, scale):
        def f(s):
            t = tmap(np.asarray(s, dtype=np.float64))
            w = _phase(t, x, y, z)
            v = np.exp(w) * scale
            if weight is not None:
                v = v * weight(t)
            return v, np.abs(v) * (1.0 + np.abs(w))

        return f

    ray = wrap(lambda s: ts + s * rot, rot)
    s_end, tail = _truncation(ray)
    parts = [(ray, 0.0, s_end)]
    if ts > 0.0:
        parts.insert(0, (wrap(lambda s: s.astype(np.complex128), 1.0), 0.0, ts))
    tol = cfg.abs_tol / len(parts)
    total, err, panels, bad = 0j, tail, 0, False
    for f, a, b in parts:
        val, e, n, ex = _adaptive(f, a, b, tol, cfg.max_depth, _MAX_PANELS - panels)
        total += val
        err += e
        panels += n
        bad |= ex
    if bad:
        raise OracleDepthError(total, err)
    return OracleResult(total, err, panels)


def oracle_I(p, cfg: OracleConfig = OracleConfig()) -> complex:
    """Reference value of I(x, y, z); raises OracleDepthError if the budget runs out."""
    x, y, z = p
    return oracle_integrate(x, y, z, None, cfg).value


def oracle_J(p, d, cfg: OracleConfig = OracleConfig()) -> complex:
    """Reference value of grad I . (l1, l2, l3)."""
    x, y, z = p
    l1, l2, l3 = d
    return oracle_integrate(x, y, z, lambda t: _phase(t, l1, l2, l3), cfg).value
