"""Exception classes for lagrangian-surfaces."""

from typing import Optional


class LagrangianSurfacesError(Exception):
    """Base exception for all lagrangian-surfaces errors."""
    pass


class ConfigurationError(LagrangianSurfacesError):
    """Raised when a job configuration is missing or invalid."""
    pass


class NonFiniteInputError(LagrangianSurfacesError, ValueError):
    """Raised when NaN or Inf reaches a module boundary."""
    pass


class DomainError(LagrangianSurfacesError, ValueError):
    """Raised when a parameter lies outside the domain of an operation."""
    pass


class IntegrationDriftError(LagrangianSurfacesError):
    """Raised when a conserved quantity drifts beyond tolerance during integration."""

    def __init__(self, message: str, quantity: str, value: float, sample: int):
        super().__init__(message)
        self.quantity = quantity
        self.value = value
        self.sample = sample


class LegendreAngleError(LagrangianSurfacesError):
    """Raised when det(curve, curve') is not of unit modulus."""
    pass


class LagrangianAnglePoleError(LagrangianSurfacesError):
    """Raised when the Lagrangian angle formula hits a zero of gamma_1."""

    def __init__(
        self,
        message: str,
        index: tuple[int, int],
        t: Optional[float] = None,
        s: Optional[float] = None,
    ):
        super().__init__(message)
        self.index = index
        self.t = t
        self.s = s


class UnwrapError(LagrangianSurfacesError):
    """Raised when a 2-D angle unwrap is not path independent."""
    pass


class SurfaceConstructionError(LagrangianSurfacesError):
    """Raised when curves cannot be combined into a Lagrangian surface."""
    pass


class OracleError(LagrangianSurfacesError):
    """Raised when the finite-difference oracle cannot evaluate its input."""
    pass


class QuadratureMismatchError(LagrangianSurfacesError):
    """Raised when two quadratures of the same quantity disagree."""
    pass
