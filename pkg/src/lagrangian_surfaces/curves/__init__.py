#!/usr/bin/env python3
# __init__.py - Legendre curves in S^3 and H^3_1

from .catalog import CurveFamily, create_curve, profile_from_mapping, radial_from_mapping
from .families import (
    HyperbolicBranch,
    cmc_period,
    cmc_profile_hyperbolic,
    cmc_profile_sphere,
    constant_curvature_hyperbolic,
    constant_curvature_sphere,
    geodesic_hyperbolic,
    geodesic_sphere,
    horizontal_circle_hyperbolic,
    horizontal_circle_period,
    horizontal_circle_sphere,
    hyperbolic_branch,
    is_closed_lift,
)
from .hopf import geodesic_curvature, hopf_project, horizontal_lift, projected_speed
from .io import (
    CURVE_COLUMNS,
    curve_descriptor,
    curve_from_descriptor,
    curve_table,
    read_curve_csv,
    write_curve_csv,
)
from .legendre import (
    assemble_curve,
    curvature_of,
    curve_defects,
    defect_fields,
    integrate_legendre,
    legendre_angle,
    rotate_fibre,
    rotate_first_component,
)
from .radial import (
    first_integral_residual,
    from_radial_profile,
    radial_curvature,
    radial_derivative,
)
from .types import (
    CurvatureProfile,
    CurveDefects,
    CurveJet,
    HyperbolicIC,
    InitialJet,
    LegendreCurve,
    ProfileKind,
    ProjectedCurve,
    ProjectionTarget,
    RadialProfile,
    SphereIC,
)

__all__ = [
    'CurveFamily', 'create_curve', 'profile_from_mapping', 'radial_from_mapping',
    'HyperbolicBranch', 'hyperbolic_branch', 'cmc_period',
    'cmc_profile_hyperbolic', 'cmc_profile_sphere',
    'constant_curvature_hyperbolic', 'constant_curvature_sphere',
    'geodesic_hyperbolic', 'geodesic_sphere',
    'horizontal_circle_hyperbolic', 'horizontal_circle_sphere',
    'horizontal_circle_period', 'is_closed_lift',
    'CURVE_COLUMNS', 'curve_descriptor', 'curve_from_descriptor', 'curve_table',
    'read_curve_csv', 'write_curve_csv',
    'geodesic_curvature', 'hopf_project', 'horizontal_lift', 'projected_speed',
    'assemble_curve', 'curvature_of', 'curve_defects', 'defect_fields', 'integrate_legendre',
    'legendre_angle', 'rotate_fibre', 'rotate_first_component',
    'first_integral_residual', 'from_radial_profile', 'radial_curvature', 'radial_derivative',
    'CurvatureProfile', 'CurveDefects', 'CurveJet', 'HyperbolicIC', 'InitialJet',
    'LegendreCurve', 'ProfileKind', 'ProjectedCurve', 'ProjectionTarget',
    'RadialProfile', 'SphereIC',
]
