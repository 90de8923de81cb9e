#!/usr/bin/env python3
# radial.py - Curves from the modulus r = |x_1|, curvature from r, and CMC first integrals

from __future__ import annotations

from typing import Optional

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import cumulative_simpson

from ..constants import DEFAULT_STEP, EPS_ALG, EPS_ODE
from ..exceptions import DomainError
from ..geometry.angles import unwrap_line
from ..geometry.core import AmbientQuadric, require_finite
from ..logging import get_logger
from .integrator import make_grid
from .legendre import assemble_curve
from .types import LegendreCurve, RadialProfile

logger = get_logger('curves.radial')


def _radicand(ambient: AmbientQuadric, r: NDArray[np.float64], dr: NDArray[np.float64]) -> NDArray[np.float64]:
    """1 - r^2 - r'^2 on S^3, 1 + r^2 - r'^2 on H^3_1."""
    return 1.0 - ambient.signature * r**2 - dr**2


def radial_curvature(
    ambient: AmbientQuadric,
    r: NDArray[np.float64],
    dr: NDArray[np.float64],
    ddr: Optional[NDArray[np.float64]],
    param: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Curvature determined by r through the second-order ODE in r.

    Sphere: r'' - (1 - r^2 - r'^2)/r + r + k sqrt(1 - r^2 - r'^2) = 0.
    Hyperbolic: r'' - (1 + r^2 - r'^2)/r - r + k sqrt(1 + r^2 - r'^2) = 0.
    """
    r, dr = np.asarray(r, dtype=np.float64), np.asarray(dr, dtype=np.float64)
    if ddr is None:
        ddr = np.gradient(dr, param, edge_order=2)
    rad = _radicand(ambient, r, dr)
    root = np.sqrt(np.clip(rad, 0.0, None))
    flat = root <= EPS_ALG
    if np.any(flat):
        bad = int(np.argmax(flat))
        raise DomainError(
            f"curvature is not determined by r where the radicand vanishes "
            f"(sample {bad}, param={float(np.asarray(param)[bad]):.6g})"
        )
    return np.asarray((rad / r - ambient.signature * r - ddr) / root, dtype=np.float64)


def _angle_curvature(
    param: NDArray[np.float64], position: NDArray[np.complex128], velocity: NDArray[np.complex128]
) -> NDArray[np.float64]:
    det = position[:, 0] * velocity[:, 1] - velocity[:, 0] * position[:, 1]
    return np.gradient(unwrap_line(np.angle(det)), param, edge_order=2)


def from_radial_profile(
    ambient: AmbientQuadric,
    profile: RadialProfile,
    span: tuple[float, float],
    step: float = DEFAULT_STEP,
) -> LegendreCurve:
    """Assemble a Legendre curve from r = |x_1| and r'.

    The phases of both components are the integrals

        S^3:   phi_1' = sqrt(1-r^2-r'^2)/r,  phi_2' = r sqrt(1-r^2-r'^2)/(r^2-1)
        H^3_1: phi_1' = sqrt(1+r^2-r'^2)/r,  phi_2' = r sqrt(1+r^2-r'^2)/(1+r^2)

    evaluated by cumulative Simpson quadrature from the first sample. When
    the profile supplies r'' and the radicand stays positive the curvature is
    taken from the r-equation; otherwise it is the derivative of the Legendre
    angle.
    """
    grid, _, window = make_grid(span, step)
    x = grid[window]
    r = np.asarray(profile.r(x), dtype=np.float64)
    dr = np.asarray(profile.dr(x), dtype=np.float64)
    require_finite(r, "r")
    require_finite(dr, "r'")
    sign = ambient.signature

    upper = 1.0 if ambient is AmbientQuadric.SPHERE3 else np.inf
    singular = (r <= 0.0) | (r >= upper)
    if np.any(singular):
        bad = int(np.argmax(singular))
        raise DomainError(
            f"r={r[bad]:.6g} at sample {bad} (param={x[bad]:.6g}) is at a singular endpoint"
        )
    rad = _radicand(ambient, r, dr)
    if np.min(rad) < -EPS_ALG:
        bad = int(np.argmin(rad))
        raise DomainError(
            f"radicand {rad[bad]:.3e} is negative at sample {bad} (param={x[bad]:.6g})"
        )
    root = np.sqrt(np.clip(rad, 0.0, None))

    q = np.sqrt(1.0 - sign * r**2)
    dq = -sign * r * dr / q
    d_phi1 = root / r
    d_phi2 = -sign * r * root / q**2
    phi1 = cumulative_simpson(d_phi1, x=x, initial=0.0)
    phi2 = cumulative_simpson(d_phi2, x=x, initial=0.0)
    e1, e2 = np.exp(1j * phi1), np.exp(1j * phi2)
    position = np.stack([r * e1, q * e2], axis=-1)
    velocity = np.stack([(dr + 1j * r * d_phi1) * e1, (dq + 1j * q * d_phi2) * e2], axis=-1)

    if profile.ddr is not None and np.min(root) > EPS_ALG:
        curvature = radial_curvature(ambient, r, dr, np.asarray(profile.ddr(x)), x)
    else:
        curvature = _angle_curvature(x, position, velocity)
    logger.debug("radial profile on %s: %d samples", ambient.short_name, x.size)
    return assemble_curve(ambient, x, position, velocity, curvature, family="radial_profile")


def radial_derivative(curve: LegendreCurve) -> NDArray[np.float64]:
    """r' of r = |x_1| from the jets; |x_1'| where x_1 vanishes."""
    x1, dx1 = curve.position[:, 0], curve.velocity[:, 0]
    r = np.abs(x1)
    safe = np.where(r > 1e-12, r, 1.0)
    return np.where(r > 1e-12, np.real(dx1 * np.conj(x1)) / safe, np.abs(dx1))


def first_integral_residual(
    curve: LegendreCurve, rho: float, lam: float, mu: float
) -> NDArray[np.float64]:
    """(4 rho^2 r^2 -+ lambda)^{3/2} / (12 rho^2) + mu - r sqrt(1 -+ r^2 - r'^2).

    Upper signs on S^3, lower signs on H^3_1. Vanishes along the generators
    of CMC surfaces with mean curvature rho.
    """
    require_finite([rho, lam, mu], "rho/lambda/mu")
    if rho <= 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    sign = curve.ambient.signature
    r = curve.modulus1
    dr = radial_derivative(curve)
    rad = _radicand(curve.ambient, r, dr)
    if np.min(rad) < -EPS_ODE:
        bad = int(np.argmin(rad))
        raise DomainError(
            f"radicand {rad[bad]:.3e} is negative at sample {bad} (param={curve.param[bad]:.6g})"
        )
    base = np.clip(4.0 * rho**2 * r**2 - sign * lam, 0.0, None)
    return np.asarray(
        base**1.5 / (12.0 * rho**2) + mu - r * np.sqrt(np.clip(rad, 0.0, None)),
        dtype=np.float64,
    )
