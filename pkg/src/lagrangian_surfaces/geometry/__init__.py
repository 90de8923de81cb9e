"""Exact semantics of C^2: Hermitian product, Kähler form, complex structure."""

from .angles import unit_complex_distance, unwrap_grid, unwrap_line
from .core import (
    AmbientQuadric,
    ComplexPair,
    as_pairs,
    det_c,
    euclidean_inner,
    hermitian_product,
    kahler_form,
    multiply_by_i,
    plane_inner,
    plane_rotation_inner,
    quadric_residual,
    require_finite,
    signed_hermitian,
)

__all__ = [
    "AmbientQuadric", "ComplexPair", "as_pairs", "det_c", "euclidean_inner",
    "hermitian_product", "kahler_form", "multiply_by_i", "plane_inner",
    "plane_rotation_inner", "quadric_residual", "require_finite", "signed_hermitian",
    "unit_complex_distance", "unwrap_grid", "unwrap_line",
]
