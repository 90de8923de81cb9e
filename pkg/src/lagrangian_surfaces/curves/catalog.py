#!/usr/bin/env python3
# catalog.py - Curve family registry and factory

from __future__ import annotations

import dataclasses
import math
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from ..constants import DEFAULT_STEP
from ..geometry.core import AmbientQuadric
from . import families
from .hopf import hopf_project, horizontal_lift
from .legendre import integrate_legendre
from .radial import from_radial_profile
from .types import CurvatureProfile, HyperbolicIC, LegendreCurve, RadialProfile, SphereIC


class CurveFamily(Enum):
    """Enumeration of constructible curve families."""
    GEODESIC_SPHERE = "geodesic_sphere"
    GEODESIC_HYPERBOLIC = "geodesic_hyperbolic"
    CONSTANT_CURVATURE_SPHERE = "constant_curvature_sphere"
    CONSTANT_CURVATURE_HYPERBOLIC = "constant_curvature_hyperbolic"
    HORIZONTAL_CIRCLE_SPHERE = "horizontal_circle_sphere"
    HORIZONTAL_CIRCLE_HYPERBOLIC = "horizontal_circle_hyperbolic"
    CMC_PROFILE_SPHERE = "cmc_profile_sphere"
    CMC_PROFILE_HYPERBOLIC = "cmc_profile_hyperbolic"
    INTEGRATED_SPHERE = "integrated_sphere"
    INTEGRATED_HYPERBOLIC = "integrated_hyperbolic"
    RADIAL_SPHERE = "radial_sphere"
    RADIAL_HYPERBOLIC = "radial_hyperbolic"
    HOPF_LIFT_SPHERE = "hopf_lift_sphere"
    HOPF_LIFT_HYPERBOLIC = "hopf_lift_hyperbolic"

    @property
    def ambient(self) -> AmbientQuadric:
        if self.value.endswith("_sphere"):
            return AmbientQuadric.SPHERE3
        return AmbientQuadric.ANTI_DE_SITTER3


def radial_from_mapping(mapping: Mapping[str, Any]) -> RadialProfile:
    """Spline r through samples {'x', 'r'} and r' through 'dr' when given, else r's derivative."""
    x = np.asarray(mapping["x"], dtype=np.float64)
    r = CubicSpline(x, np.asarray(mapping["r"], dtype=np.float64))
    if mapping.get("dr") is None:
        return RadialProfile(r=r, dr=r.derivative(), ddr=r.derivative(2))
    dr = CubicSpline(x, np.asarray(mapping["dr"], dtype=np.float64))
    return RadialProfile(r=r, dr=dr, ddr=dr.derivative())


def profile_from_mapping(
    mapping: Mapping[str, Any], ambient: Optional[AmbientQuadric] = None
) -> CurvatureProfile:
    """Build a CurvatureProfile from a {'kind': ..., ...} mapping.

    ``radial_derived`` profiles take their ambient from the curve being built.
    """
    kind = mapping.get("kind")
    if kind == "constant":
        return CurvatureProfile.constant(mapping["c"])
    if kind == "linear":
        return CurvatureProfile.linear(mapping["a"], mapping["b"])
    if kind == "tabulated":
        return CurvatureProfile.tabulated(mapping["x"], mapping["k"])
    if kind == "radial_derived":
        if ambient is None:
            raise ValueError("a radial_derived profile needs the ambient of its curve")
        return CurvatureProfile.radial_derived(ambient, radial_from_mapping(mapping))
    raise ValueError(f"Unknown curvature profile kind: {kind}")


def _hopf_lift(family: CurveFamily, p: Dict[str, Any], span: tuple[float, float], step: float) -> LegendreCurve:
    source = dict(p["source"])
    source_family = CurveFamily(source.pop("family"))
    if source_family.ambient is not family.ambient:
        raise ValueError(f"{family.value} needs a source on {family.ambient.value}, got {source_family.value}")
    curve = create_curve(source_family, source, span, step)
    lift = horizontal_lift(hopf_project(curve), phase=float(p.get("phase", 0.0)), step=step)
    return dataclasses.replace(lift, parameters={})


def create_curve(
    family: CurveFamily,
    params: Optional[Mapping[str, Any]] = None,
    span: Sequence[float] = (0.0, 2.0 * math.pi),
    step: float = DEFAULT_STEP,
) -> LegendreCurve:
    """
    Factory function building a curve of a named family.

    Args:
        family: Family to build
        params: Family parameters (psi/a, delta/b, c, b0, profile, radial, source/phase)
        span: Parameter interval
        step: Sampling (and integration) step

    Returns:
        LegendreCurve

    Raises:
        ValueError: If unknown family is provided
    """
    p: Dict[str, Any] = dict(params or {})
    sp = (float(span[0]), float(span[1]))
    if family is CurveFamily.GEODESIC_SPHERE:
        return families.geodesic_sphere(p.get("psi", 0.0), p.get("a", math.pi), sp, step)
    elif family is CurveFamily.GEODESIC_HYPERBOLIC:
        return families.geodesic_hyperbolic(p.get("delta", 0.0), p.get("b", 0.0), sp, step)
    elif family is CurveFamily.CONSTANT_CURVATURE_SPHERE:
        ic = SphereIC(p.get("psi", 0.0), p.get("a", math.pi))
        return families.constant_curvature_sphere(p["c"], ic, sp, step)
    elif family is CurveFamily.CONSTANT_CURVATURE_HYPERBOLIC:
        hic = HyperbolicIC(p.get("delta", 0.0), p.get("b", 0.0))
        return families.constant_curvature_hyperbolic(p["b0"], hic, sp, step)
    elif family is CurveFamily.HORIZONTAL_CIRCLE_SPHERE:
        return families.horizontal_circle_sphere(p["psi"], sp, step)
    elif family is CurveFamily.HORIZONTAL_CIRCLE_HYPERBOLIC:
        return families.horizontal_circle_hyperbolic(p["delta"], sp, step)
    elif family is CurveFamily.CMC_PROFILE_SPHERE:
        return families.cmc_profile_sphere(sp, step)
    elif family is CurveFamily.CMC_PROFILE_HYPERBOLIC:
        return families.cmc_profile_hyperbolic(sp, step)
    elif family is CurveFamily.INTEGRATED_SPHERE:
        ic = SphereIC(p.get("psi", 0.0), p.get("a", math.pi))
        curve = integrate_legendre(
            family.ambient, profile_from_mapping(p["profile"], family.ambient), ic, sp, step,
            family=family.value,
        )
    elif family is CurveFamily.INTEGRATED_HYPERBOLIC:
        hic = HyperbolicIC(p.get("delta", 0.0), p.get("b", 0.0))
        curve = integrate_legendre(
            family.ambient, profile_from_mapping(p["profile"], family.ambient), hic, sp, step,
            family=family.value,
        )
    elif family in (CurveFamily.RADIAL_SPHERE, CurveFamily.RADIAL_HYPERBOLIC):
        curve = from_radial_profile(family.ambient, radial_from_mapping(p["radial"]), sp, step)
    elif family in (CurveFamily.HOPF_LIFT_SPHERE, CurveFamily.HOPF_LIFT_HYPERBOLIC):
        curve = _hopf_lift(family, p, sp, step)
    else:
        raise ValueError(f"Unknown curve family: {family}")
    # descriptors rebuild from the mapping the curve was made from
    return dataclasses.replace(curve, family=family.value, parameters={**curve.parameters, **p})
