#!/usr/bin/env python3
# legendre.py - Legendre angle, curvature, invariant checks and ODE integration

from __future__ import annotations

import dataclasses
from typing import Any, Dict, Optional, Union

import numpy as np
from numpy.typing import NDArray

from ..constants import DEFAULT_STEP, DRIFT_LIMIT
from ..exceptions import DomainError, IntegrationDriftError, LegendreAngleError
from ..geometry.angles import unwrap_line
from ..geometry.core import AmbientQuadric, require_finite
from ..logging import get_logger
from ..system.observability import CurveBuiltEvent, event_bus
from .integrator import integrate_jets, make_grid
from .types import (
    CurvatureProfile,
    CurveDefects,
    HyperbolicIC,
    InitialJet,
    LegendreCurve,
    SphereIC,
)

logger = get_logger('curves')

InitialCondition = Union[SphereIC, HyperbolicIC, InitialJet]


def defect_fields(curve: LegendreCurve) -> Dict[str, NDArray[np.float64]]:
    """Per-sample quadric, unit-speed, tangency and Legendre defects."""
    p, v = curve.position, curve.velocity
    sign = curve.ambient.signature
    vp = v[:, 0] * np.conj(p[:, 0]) + sign * v[:, 1] * np.conj(p[:, 1])
    vv = np.abs(v[:, 0]) ** 2 + sign * np.abs(v[:, 1]) ** 2
    return {
        "quadric": np.abs(np.abs(p[:, 0]) ** 2 + sign * np.abs(p[:, 1]) ** 2 - sign),
        "speed": np.abs(vv - 1.0),
        "tangency": np.abs(vp.real),
        # <v, i p> = Im (v, p)
        "legendre": np.abs(vp.imag),
    }


def curve_defects(curve: LegendreCurve) -> CurveDefects:
    """Worst quadric, unit-speed, tangency and Legendre defects of a curve."""
    fields = defect_fields(curve)
    return CurveDefects(**{name: float(np.max(values)) for name, values in fields.items()})


def legendre_angle(curve: LegendreCurve) -> LegendreCurve:
    """Store the unwrapped Legendre angle, e^{i theta} = x1 x2' - x1' x2."""
    det = curve.position[:, 0] * curve.velocity[:, 1] - curve.velocity[:, 0] * curve.position[:, 1]
    deviation = np.abs(np.abs(det) - 1.0)
    worst = int(np.argmax(deviation))
    if deviation[worst] > DRIFT_LIMIT:
        raise LegendreAngleError(
            f"|det(x, x')| deviates from 1 by {deviation[worst]:.3e} "
            f"at sample {worst} (param={curve.param[worst]:.6g})"
        )
    return dataclasses.replace(curve, legendre_angle=unwrap_line(np.angle(det)))


def curvature_of(curve: LegendreCurve) -> NDArray[np.float64]:
    """Curvature recovered as the derivative of the Legendre angle."""
    if curve.legendre_angle is None:
        raise DomainError("legendre angle has not been computed for this curve")
    if len(curve) < 3:
        raise DomainError("curvature extraction needs at least three samples")
    return np.gradient(curve.legendre_angle, curve.param, edge_order=2)


def rotate_first_component(curve: LegendreCurve, phi: float) -> LegendreCurve:
    """Replace x by (e^{i phi} x1, x2); the projection turns about the x3-axis."""
    rot = np.array([np.exp(1j * phi), 1.0], dtype=np.complex128)
    rotated = dataclasses.replace(
        curve,
        position=curve.position * rot,
        velocity=curve.velocity * rot,
        legendre_angle=None,
        parameters={**curve.parameters, "rotation": float(phi)},
    )
    return legendre_angle(rotated)


def assemble_curve(
    ambient: AmbientQuadric,
    param: NDArray[np.float64],
    position: NDArray[np.complex128],
    velocity: NDArray[np.complex128],
    curvature: NDArray[np.float64],
    family: str,
    parameters: Optional[Dict[str, Any]] = None,
) -> LegendreCurve:
    """Validate sampled jets, attach the Legendre angle and announce the curve."""
    require_finite(position, f"{family} position")
    require_finite(velocity, f"{family} velocity")
    require_finite(curvature, f"{family} curvature")
    curve = LegendreCurve(
        ambient=ambient,
        param=np.asarray(param, dtype=np.float64),
        position=np.asarray(position, dtype=np.complex128),
        velocity=np.asarray(velocity, dtype=np.complex128),
        curvature=np.asarray(curvature, dtype=np.float64),
        family=family,
        parameters=dict(parameters or {}),
    )
    fields = defect_fields(curve)
    for name, values in fields.items():
        worst = int(np.argmax(values))
        if values[worst] > DRIFT_LIMIT:
            raise IntegrationDriftError(
                f"{family}: {name} defect {values[worst]:.3e} at sample {worst} "
                f"(param={param[worst]:.6g}) exceeds {DRIFT_LIMIT:.1e}; reduce the step",
                quantity=name,
                value=float(values[worst]),
                sample=worst,
            )
    curve = legendre_angle(curve)
    max_defect = max(float(np.max(values)) for values in fields.values())
    event_bus.publish(CurveBuiltEvent(
        event_type="curve.built",
        component="curves",
        family=family,
        ambient=ambient.value,
        samples=len(curve),
        max_defect=max_defect,
    ))
    logger.debug("%s on %s: %d samples, max defect %.2e", family, ambient.short_name, len(curve), max_defect)
    return curve


def _check_ic(ambient: AmbientQuadric, ic: InitialCondition) -> None:
    if isinstance(ic, SphereIC) and ambient is not AmbientQuadric.SPHERE3:
        raise DomainError("SphereIC requires the Sphere3 ambient")
    if isinstance(ic, HyperbolicIC) and ambient is not AmbientQuadric.ANTI_DE_SITTER3:
        raise DomainError("HyperbolicIC requires the AntiDeSitter3 ambient")


def integrate_legendre(
    ambient: AmbientQuadric,
    k: CurvatureProfile,
    ic: InitialCondition,
    span: tuple[float, float],
    step: float = DEFAULT_STEP,
    family: str = "integrated",
) -> LegendreCurve:
    """Integrate x'' - i k x' + sign x = 0 with classical RK4.

    The initial jet sits at parameter 0; the grid consists of the multiples of
    ``step`` in ``span``. Quadric, unit speed, tangency and the Legendre
    condition are first integrals of the flow; drift beyond 100*EPS_ODE aborts.

    Args:
        ambient: Quadric carrying the curve
        k: Prescribed curvature profile
        ic: SphereIC, HyperbolicIC or an explicit InitialJet at parameter 0
        span: Parameter interval to sample
        step: Fixed RK4 step

    Returns:
        LegendreCurve with curvature samples k(param) and the Legendre angle

    Raises:
        IntegrationDriftError: an invariant drifted beyond tolerance
    """
    _check_ic(ambient, ic)
    grid, origin, window = make_grid(span, step)
    p0, v0 = ic.jet()
    position, velocity = integrate_jets(ambient, k, p0, v0, grid, origin)
    param = grid[window]
    parameters: Dict[str, Any] = {"profile": k.describe()}
    if isinstance(ic, (SphereIC, HyperbolicIC)):
        parameters.update(dataclasses.asdict(ic))
    return assemble_curve(
        ambient,
        param,
        position[window],
        velocity[window],
        k(param),
        family=family,
        parameters=parameters,
    )


def rotate_fibre(curve: LegendreCurve, theta: float) -> LegendreCurve:
    """Multiply the whole curve by e^{i theta}; the Hopf image is unchanged."""
    factor = np.exp(1j * theta)
    rotated = dataclasses.replace(
        curve,
        position=curve.position * factor,
        velocity=curve.velocity * factor,
        legendre_angle=None,
        parameters={**curve.parameters, "fibre_phase": float(theta)},
    )
    return legendre_angle(rotated)
