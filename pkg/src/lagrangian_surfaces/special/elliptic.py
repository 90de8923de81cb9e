#!/usr/bin/env python3
# elliptic.py - Jacobi elliptic functions and K(k) by the arithmetic-geometric mean

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..constants import (
    AGM_MAX_ITERATIONS,
    AGM_TOLERANCE,
    CMC_HYPERBOLIC_MODULUS,
    CMC_SPHERE_MODULUS,
)
from ..exceptions import DomainError
from ..geometry.core import require_finite

FloatOrArray = Union[float, NDArray[np.float64]]


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus k of the Jacobi functions, 0 <= k < 1."""
    k: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.k):
            raise DomainError(f"elliptic modulus must be finite, got {self.k}")
        if not 0.0 <= self.k < 1.0:
            raise DomainError(f"elliptic modulus must satisfy 0 <= k < 1, got {self.k}")

    @property
    def complementary(self) -> float:
        return math.sqrt(1.0 - self.k * self.k)


ModulusLike = Union[EllipticModulus, float]

CMC_SPHERE = EllipticModulus(CMC_SPHERE_MODULUS)
CMC_HYPERBOLIC = EllipticModulus(CMC_HYPERBOLIC_MODULUS)


def _modulus(k: ModulusLike) -> EllipticModulus:
    return k if isinstance(k, EllipticModulus) else EllipticModulus(float(k))


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    for _ in range(AGM_MAX_ITERATIONS):
        if abs(a - b) <= AGM_TOLERANCE * max(abs(a), 1.0):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def complete_elliptic_K(k: ModulusLike) -> float:
    """Quarter period K(k) = pi / (2 agm(1, k'))."""
    m = _modulus(k)
    return math.pi / (2.0 * agm(1.0, m.complementary))


def _landen_sequence(m: EllipticModulus) -> tuple[list[float], list[float]]:
    """Descending Landen ratios c_n / a_n and the means a_n."""
    a, b, c = 1.0, m.complementary, m.k
    means, ratios = [a], [c / a]
    for _ in range(AGM_MAX_ITERATIONS):
        if abs(c) < AGM_TOLERANCE:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        means.append(a)
        ratios.append(c / a)
    return means, ratios


def jacobi_cn_sn_dn(
    x: ArrayLike, k: ModulusLike
) -> tuple[FloatOrArray, FloatOrArray, FloatOrArray]:
    """Jacobi cn, sn, dn at argument x and modulus k.

    Uses the descending Landen transformation: with a_0 = 1, b_0 = k',
    c_0 = k and the AGM recursion, phi_N = 2^N a_N x and
    phi_{n-1} = (phi_n + asin((c_n / a_n) sin phi_n)) / 2. Then
    sn = sin phi_0, cn = cos phi_0 and dn = sqrt(1 - k^2 sn^2).

    Parameters
    ----------
    x : array_like
        Real argument, scalar or array.
    k : EllipticModulus or float
        Modulus in [0, 1).

    Returns
    -------
    cn, sn, dn : float or ndarray
        Same shape as ``x``.
    """
    m = _modulus(k)
    arg = np.asarray(x, dtype=np.float64)
    require_finite(arg, "x")

    means, ratios = _landen_sequence(m)
    n = len(means) - 1
    phi = (2.0 ** n) * means[n] * arg
    for level in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(ratios[level] * np.sin(phi)))

    sn = np.sin(phi)
    cn = np.cos(phi)
    # dn > 0 for real arguments when k < 1
    dn = np.sqrt(1.0 - m.k * m.k * sn * sn)
    if arg.ndim == 0:
        return float(cn), float(sn), float(dn)
    return cn, sn, dn


__all__ = [
    "EllipticModulus", "CMC_SPHERE", "CMC_HYPERBOLIC", "agm",
    "complete_elliptic_K", "jacobi_cn_sn_dn",
]
