"""Jacobi elliptic functions and the complete elliptic integral of the first kind."""

from .elliptic import (
    CMC_HYPERBOLIC,
    CMC_SPHERE,
    EllipticModulus,
    agm,
    complete_elliptic_K,
    jacobi_cn_sn_dn,
)

__all__ = [
    "CMC_HYPERBOLIC", "CMC_SPHERE", "EllipticModulus", "agm",
    "complete_elliptic_K", "jacobi_cn_sn_dn",
]
