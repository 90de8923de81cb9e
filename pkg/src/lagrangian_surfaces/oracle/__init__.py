#!/usr/bin/env python3
# __init__.py - Finite-difference oracle for surface geometry

from .fields import (
    CONFORMALITY_LIMIT,
    AngleAndCurvature,
    FirstFundamentalForm,
    ScalarField,
    fd_c_tensor,
    fd_connection_products,
    fd_first_fundamental,
    fd_harmonicity,
    fd_lagrangian_angle_and_H,
    fd_lagrangian_defect,
)
from .stencils import StencilConfig, interior

__all__ = [
    'CONFORMALITY_LIMIT', 'AngleAndCurvature', 'FirstFundamentalForm', 'ScalarField',
    'fd_c_tensor', 'fd_connection_products', 'fd_first_fundamental', 'fd_harmonicity',
    'fd_lagrangian_angle_and_H', 'fd_lagrangian_defect',
    'StencilConfig', 'interior',
]
