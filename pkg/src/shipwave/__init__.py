"""Wavelike term of the Kelvin wave-source Green's function.

Evaluates

    I(x, y, z) = integral_0^inf exp(y (1 + t**2) + i (x + z t) sqrt(1 + t**2)) dt

for x <= 0, y <= 0 (nu = 1 units), the assembled far-field term
I_inf = H(-x)/pi Im[I(x, y, z) + I(x, y, -z)] and directional derivatives.
Two engines are provided: Levin-type collocation (:mod:`shipwave.levin`) and
nested Clenshaw-Curtis quadrature on a steepest-descent contour
(:mod:`shipwave.clenshaw_curtis`).
"""

from ._accel import NUMBA_ENABLED, backend
from .clenshaw_curtis import CCResult, CCWeights, ContourPlan, cc_weights, integrate_I
from .derivatives import Direction, deriv_cc, deriv_levin
from .errors import (
    DegeneratePointError,
    DomainError,
    NonFiniteIntegrandError,
    ShipWaveError,
    SingularMatrixError,
    TrackSingularityError,
)
from .levin import LevinResult, solve_corrected, solve_plain
from .point import FieldPoint
from .wavelike import EvalConfig, EvalReport, closed_form_axis, critical_points, eval_I, eval_I_infinity, eval_J

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "backend",
    "CCResult",
    "CCWeights",
    "ContourPlan",
    "cc_weights",
    "integrate_I",
    "Direction",
    "deriv_cc",
    "deriv_levin",
    "DegeneratePointError",
    "DomainError",
    "NonFiniteIntegrandError",
    "ShipWaveError",
    "SingularMatrixError",
    "TrackSingularityError",
    "LevinResult",
    "solve_corrected",
    "solve_plain",
    "FieldPoint",
    "EvalConfig",
    "EvalReport",
    "closed_form_axis",
    "critical_points",
    "eval_I",
    "eval_I_infinity",
    "eval_J",
]
