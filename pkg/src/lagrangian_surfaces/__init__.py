# Lagrangian Surfaces
"""
lagrangian-surfaces - Lagrangian surfaces in C^2 built from a Legendre curve in
the anti-de Sitter space H^3_1 and a Legendre curve in the 3-sphere.
"""

from .curves import CurveFamily, LegendreCurve, create_curve, integrate_legendre
from .exceptions import (
    ConfigurationError,
    LagrangianSurfacesError,
    SurfaceConstructionError,
)
from .geometry import AmbientQuadric
from .logging import LogLevel, set_logging
from .surface import SurfaceGrid, analyze_surface, build_surface, classify

__version__ = "0.1.0"
__all__ = [
    "AmbientQuadric",
    "CurveFamily",
    "LegendreCurve",
    "create_curve",
    "integrate_legendre",
    "SurfaceGrid",
    "analyze_surface",
    "build_surface",
    "classify",
    "set_logging",
    "LogLevel",
    "LagrangianSurfacesError",
    "ConfigurationError",
    "SurfaceConstructionError",
]
