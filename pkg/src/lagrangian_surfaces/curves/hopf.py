#!/usr/bin/env python3
# hopf.py - Hopf projections to S^2(1/2) and H^2(-1/2), geodesic curvature, horizontal lifts

from __future__ import annotations

import dataclasses

import numpy as np
from numpy.typing import NDArray

from ..constants import DEFAULT_STEP, DRIFT_LIMIT
from ..exceptions import DomainError
from ..geometry.core import AmbientQuadric, ComplexPair
from ..logging import get_logger
from .legendre import integrate_legendre
from .types import (
    CurvatureProfile,
    InitialJet,
    LegendreCurve,
    ProjectedCurve,
    ProjectionTarget,
)

logger = get_logger('curves.hopf')

_LORENTZ = np.array([1.0, 1.0, -1.0])


def lorentz_inner(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Inner product of signature (+, +, -) along the last axis."""
    return np.sum(a * b * _LORENTZ, axis=-1)


def lorentz_cross(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Cross product with <a x_L b, c>_L = det(a, b, c)."""
    return np.cross(a, b) * _LORENTZ


def _project_jets(
    z: NDArray[np.complex128], w: NDArray[np.complex128], sign: float
) -> NDArray[np.float64]:
    m = z * np.conj(w)
    x3 = 0.5 * (np.abs(z) ** 2 - sign * np.abs(w) ** 2)
    return np.stack([m.real, m.imag, x3], axis=-1)


def _project_velocity(
    z: NDArray[np.complex128],
    w: NDArray[np.complex128],
    dz: NDArray[np.complex128],
    dw: NDArray[np.complex128],
    sign: float,
) -> NDArray[np.float64]:
    dm = dz * np.conj(w) + z * np.conj(dw)
    dx3 = np.real(dz * np.conj(z)) - sign * np.real(dw * np.conj(w))
    return np.stack([dm.real, dm.imag, dx3], axis=-1)


def hopf_project(curve: LegendreCurve) -> ProjectedCurve:
    """pi(z, w) = 1/2 (2 z conj(w), |z|^2 -+ |w|^2), with jets carried along.

    On S^3 the image lies on the sphere of radius 1/2; on H^3_1 it lies on the
    upper sheet x1^2 + x2^2 - x3^2 = -1/4.
    """
    sign = curve.ambient.signature
    z, w = curve.position[:, 0], curve.position[:, 1]
    dz, dw = curve.velocity[:, 0], curve.velocity[:, 1]
    acc = curve.acceleration
    ddz, ddw = acc[:, 0], acc[:, 1]

    points = _project_jets(z, w, sign)
    velocity = _project_velocity(z, w, dz, dw, sign)
    ddm = ddz * np.conj(w) + 2.0 * dz * np.conj(dw) + z * np.conj(ddw)
    ddx3 = (
        np.real(ddz * np.conj(z)) + np.abs(dz) ** 2
        - sign * (np.real(ddw * np.conj(w)) + np.abs(dw) ** 2)
    )
    acceleration = np.stack([ddm.real, ddm.imag, ddx3], axis=-1)
    return ProjectedCurve(
        target=ProjectionTarget.for_ambient(curve.ambient),
        param=curve.param.copy(),
        points=points,
        velocity=velocity,
        acceleration=acceleration,
    )


def projected_speed(projected: ProjectedCurve) -> NDArray[np.float64]:
    velocity, _ = projected.derivatives()
    if projected.target is ProjectionTarget.SPHERE_PATCH:
        return np.asarray(np.linalg.norm(velocity, axis=-1), dtype=np.float64)
    return np.sqrt(np.clip(lorentz_inner(velocity, velocity), 0.0, None))


def geodesic_curvature(projected: ProjectedCurve) -> NDArray[np.float64]:
    """Signed geodesic curvature, oriented to agree with the Legendre curvature.

    With unit normal N = 2 x: on S^2(1/2) this is <x'', x' cross N>; on
    H^2(-1/2) it is <x'', N cross_L x'>_L.
    """
    velocity, acceleration = projected.derivatives()
    normal = 2.0 * projected.points
    if projected.target is ProjectionTarget.SPHERE_PATCH:
        return np.asarray(np.sum(acceleration * np.cross(velocity, normal), axis=-1))
    return np.asarray(lorentz_inner(acceleration, lorentz_cross(normal, velocity)))


def _fibre_point(point: NDArray[np.float64], sign: float, phase: float) -> NDArray[np.complex128]:
    x1, x2, x3 = point
    mod_z = np.sqrt(max(0.5 * sign + x3, 0.0))
    mod_w = np.sqrt(max(0.5 - sign * x3, 0.0))
    gauge = np.exp(1j * phase)
    if mod_z > 1e-8:
        z = gauge * mod_z
        w = np.conj(complex(x1, x2) / z)
    else:
        z, w = 0.0j, gauge * mod_w
    return np.array([z, w], dtype=np.complex128)


def _horizontal_velocity(
    fibre: NDArray[np.complex128], target_velocity: NDArray[np.float64], sign: float
) -> NDArray[np.complex128]:
    """Unit horizontal vector at ``fibre`` projecting onto ``target_velocity``."""
    z, w = fibre
    horizontal = np.array([-sign * np.conj(w), np.conj(z)], dtype=np.complex128)
    columns = []
    for unit in (1.0, 1j):
        v = unit * horizontal
        columns.append(
            _project_velocity(z[None], w[None], v[0][None], v[1][None], sign)[0]
        )
    coeffs, *_ = np.linalg.lstsq(np.stack(columns, axis=1), target_velocity, rcond=None)
    lam = complex(coeffs[0], coeffs[1])
    lam /= abs(lam)
    return np.asarray(lam * horizontal, dtype=np.complex128)


def horizontal_lift(
    projected: ProjectedCurve, phase: float = 0.0, step: float = DEFAULT_STEP
) -> LegendreCurve:
    """Horizontal lift of a unit-speed projected curve.

    The curvature of the lift is the geodesic curvature of ``projected``; the
    initial point is the fibre point over ``projected.points[0]`` with first
    component of argument ``phase``. Lifts with different phases differ by a
    global unit factor.
    """
    ambient = projected.target.ambient
    sign = ambient.signature
    residual = np.max(np.abs(projected.quadric_residual()))
    if residual > DRIFT_LIMIT:
        raise DomainError(f"projected curve leaves its quadric (residual {residual:.3e})")
    speed_defect = np.max(np.abs(projected_speed(projected) - 1.0))
    if speed_defect > DRIFT_LIMIT:
        raise DomainError(f"projected curve is not unit speed (defect {speed_defect:.3e})")

    origin = float(projected.param[0])
    shifted = projected.param - origin
    profile = CurvatureProfile.tabulated(shifted, geodesic_curvature(projected))
    velocity, _ = projected.derivatives()
    fibre = _fibre_point(projected.points[0], sign, phase)
    jet = InitialJet(
        position=ComplexPair.from_array(fibre),
        velocity=ComplexPair.from_array(_horizontal_velocity(fibre, velocity[0], sign)),
    )
    lift = integrate_legendre(
        ambient, profile, jet, (0.0, float(shifted[-1])), step, family="horizontal_lift"
    )
    logger.debug("lifted %d projected samples with phase %.6g", projected.param.size, phase)
    return dataclasses.replace(
        lift,
        param=lift.param + origin,
        parameters={**lift.parameters, "phase": phase},
    )
