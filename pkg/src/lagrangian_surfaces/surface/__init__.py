#!/usr/bin/env python3
# __init__.py - Lagrangian surfaces built from a hyperbolic and a spherical Legendre curve

from .classify import (
    ClassificationReport,
    CmcFit,
    HmFit,
    Verdict,
    WillmoreSplit,
    classify,
    fit_cmc,
    fit_hamiltonian_minimal,
    willmore_from_mean_curvature,
    willmore_functional,
    willmore_split,
)
from .grid import (
    ConnectionProducts,
    CTensor,
    SurfaceDefects,
    SurfaceGrid,
    additive_angle_defect,
    analyze_surface,
    build_surface,
    c_tensor,
    connection_products,
    gradient_law_residual,
    lagrangian_angle,
    mean_curvature,
    parallel_h_system,
    sphere_radius_check,
)


__all__ = [
    'ClassificationReport', 'CmcFit', 'HmFit', 'Verdict', 'WillmoreSplit',
    'classify', 'fit_cmc', 'fit_hamiltonian_minimal',
    'willmore_from_mean_curvature', 'willmore_functional', 'willmore_split',
    'ConnectionProducts', 'CTensor', 'SurfaceDefects', 'SurfaceGrid',
    'additive_angle_defect', 'build_surface', 'c_tensor', 'connection_products',
    'gradient_law_residual', 'lagrangian_angle', 'mean_curvature', 'parallel_h_system',
    'sphere_radius_check', 'analyze_surface',
]
