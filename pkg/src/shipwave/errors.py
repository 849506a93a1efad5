"""Exception hierarchy."""


class ShipWaveError(Exception):
    """Base class for every error raised by :mod:`shipwave`."""


class DomainError(ShipWaveError, ValueError):
    """Input outside the region where the requested quantity is defined."""


class DegeneratePointError(DomainError):
    """``y = z = 0``: the contour angle and the Levin endpoint value are undefined."""


class TrackSingularityError(DomainError):
    """Field point on the source track ``y = 0, z = 0, x < 0``."""


class SingularMatrixError(ShipWaveError, ArithmeticError):
    """Pivot below the singularity threshold during LU factorisation."""


class NonFiniteIntegrandError(ShipWaveError, FloatingPointError):
    """A quadrature node produced NaN or Inf."""

    def __init__(self, node, value):
        super().__init__(f"non-finite integrand value {value!r} at node {node!r}")
        self.node = node
        self.value = value


class SpecialFunctionOverflow(DomainError, OverflowError):
    """The requested special-function value is not representable."""


class OracleDepthError(ShipWaveError, ArithmeticError):
    """Adaptive reference quadrature ran out of subdivision depth or panels.

    ``partial`` holds the value obtained so far and ``achieved`` the error
    bound that was actually reached.
    """

    def __init__(self, partial, achieved):
        super().__init__(f"oracle stopped early: partial value {partial!r}, achieved tolerance {achieved:.3e}")
        self.partial = partial
        self.achieved = achieved
