"""Field points in the source-fixed frame (nu = 1 units)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegeneratePointError, DomainError

__all__ = ["FieldPoint", "as_point"]


@dataclass(frozen=True)
class FieldPoint:
    """Point (x, y, z): x streamwise, y vertical (up), z transverse.

    Only finiteness is checked here; the admissible region depends on the
    quantity evaluated and is checked by the callers.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def rho(self) -> float:
        """|y + iz|."""
        return math.hypot(self.y, self.z)

    @property
    def d_param(self) -> float:
        """Difficulty measure D = x**2 / (4 |y + iz|); inf on y = z = 0."""
        rho = self.rho
        if rho == 0.0:
            return 0.0 if self.x == 0.0 else math.inf
        return self.x * self.x / (4.0 * rho)

    def mirrored(self) -> "FieldPoint":
        """The point (x, y, -z)."""
        return FieldPoint(self.x, self.y, -self.z)

    def require_wave_domain(self) -> None:
        """x <= 0, y <= 0 and y + iz != 0 (the engines' common precondition)."""
        if self.x > 0.0:
            raise DomainError(f"x must be <= 0, got {self.x}")
        if self.y > 0.0:
            raise DomainError(f"y must be <= 0, got {self.y}")
        if self.y == 0.0 and self.z == 0.0:
            raise DegeneratePointError("y = z = 0 is degenerate (|y + iz| = 0)")


def as_point(p) -> FieldPoint:
    if isinstance(p, FieldPoint):
        return p
    x, y, z = p
    return FieldPoint(x, y, z)
