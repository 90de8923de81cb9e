#!/usr/bin/env python3
# grid.py - Tensor-product Lagrangian surface and its analytic geometry

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
from numpy.typing import NDArray

from ..constants import DRIFT_LIMIT, EPS_ODE, POLE_THRESHOLD
from ..curves.types import LegendreCurve
from ..exceptions import (
    LagrangianAnglePoleError,
    LegendreAngleError,
    SurfaceConstructionError,
)
from ..geometry.angles import unwrap_grid
from ..geometry.core import AmbientQuadric, plane_inner, plane_rotation_inner
from ..logging import get_logger
from ..system.observability import SurfaceBuiltEvent, event_bus

logger = get_logger('surface')

RealField = NDArray[np.float64]
PairField = NDArray[np.complex128]


@dataclass(frozen=True)
class CTensor:
    """Components C(x, y, z) = <sigma(x, y), J z> in the coordinate frame; ``margin`` as in ConnectionProducts."""
    ttt: RealField
    tts: RealField
    tss: RealField
    sss: RealField
    margin: int = 0

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(c)) for c in (self.ttt, self.tts, self.tss, self.sss)))


@dataclass(frozen=True)
class ConnectionProducts:
    """The six products <nabla_x d_y, d_z>; ``margin`` rows/columns were dropped at each edge."""
    tt_t: RealField
    tt_s: RealField
    ts_t: RealField
    ts_s: RealField
    ss_t: RealField
    ss_s: RealField
    margin: int = 0

    def as_dict(self) -> Dict[str, RealField]:
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name != "margin"}

    def antisymmetry_defect(self) -> float:
        """Worst violation of <nabla_t d_t, d_s> = -<nabla_t d_s, d_t> and its s-twin."""
        return float(max(
            np.max(np.abs(self.tt_s + self.ts_t)),
            np.max(np.abs(self.ts_s + self.ss_t)),
        ))


@dataclass(frozen=True)
class SurfaceDefects:
    conformality: float
    lagrangian: float
    modulus_identity: float

    def as_dict(self) -> Dict[str, float]:
        return dataclasses.asdict(self)


@dataclass(frozen=True, eq=False)
class SurfaceGrid:
    """phi(t, s) = (alpha1(t) gamma1(s), alpha2(t) gamma2(s)) sampled on t_grid x s_grid.

    Pair-valued fields have shape (nt, ns, 2), scalar fields (nt, ns). The
    optional fields are filled by ``lagrangian_angle``, ``mean_curvature`` and
    ``c_tensor``, each returning a new grid.
    """
    t_grid: RealField
    s_grid: RealField
    position: PairField
    d_t: PairField
    d_s: PairField
    conformal_exponent: RealField
    defects: SurfaceDefects
    lagrangian_angle: Optional[RealField] = None
    mean_curvature: Optional[PairField] = None
    c_tensor: Optional[CTensor] = None

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.t_grid.shape[0]), int(self.s_grid.shape[0]))

    @property
    def conformal_factor(self) -> RealField:
        """e^{2u}."""
        return np.exp(2.0 * self.conformal_exponent)


def _pair_inner(a: PairField, b: PairField) -> RealField:
    return np.sum(plane_inner(a, b), axis=-1)


def _check_pair(alpha: LegendreCurve, gamma: LegendreCurve) -> None:
    if alpha.ambient is not AmbientQuadric.ANTI_DE_SITTER3:
        raise SurfaceConstructionError(
            f"alpha must lie on AntiDeSitter3, got {alpha.ambient.value}"
        )
    if gamma.ambient is not AmbientQuadric.SPHERE3:
        raise SurfaceConstructionError(f"gamma must lie on Sphere3, got {gamma.ambient.value}")


def build_surface(alpha: LegendreCurve, gamma: LegendreCurve) -> SurfaceGrid:
    """Assemble phi from a hyperbolic curve alpha(t) and a spherical curve gamma(s).

    Checks conformality |phi_t|^2 = |phi_s|^2 = e^{2u}, <phi_t, phi_s> = 0, the
    Lagrangian condition and |alpha1| = |alpha2'|; any defect above the drift
    limit aborts.

    Raises:
        SurfaceConstructionError: wrong quadrics, a singular point or a failed check
    """
    _check_pair(alpha, gamma)
    a = alpha.position[:, None, :]
    g = gamma.position[None, :, :]
    position = a * g
    d_t = alpha.velocity[:, None, :] * g
    d_s = a * gamma.velocity[None, :, :]

    factor = np.abs(gamma.position[:, 0])[None, :] ** 2 + np.abs(alpha.position[:, 0])[:, None] ** 2
    if np.min(factor) < POLE_THRESHOLD ** 2:
        i, j = np.unravel_index(int(np.argmin(factor)), factor.shape)
        raise SurfaceConstructionError(
            f"phi is singular at t={alpha.param[i]:.6g}, s={gamma.param[j]:.6g} "
            "(alpha1 and gamma1 vanish together)"
        )

    conformality = max(
        float(np.max(np.abs(_pair_inner(d_t, d_t) - factor))),
        float(np.max(np.abs(_pair_inner(d_s, d_s) - factor))),
        float(np.max(np.abs(_pair_inner(d_t, d_s)))),
    )
    # omega(d_t, d_s) = -Im (d_t, d_s)
    lagrangian = float(np.max(np.abs(np.sum(plane_rotation_inner(d_t, d_s), axis=-1))))
    modulus_identity = float(np.max(np.abs(
        np.abs(alpha.position[:, 0]) ** 2 - np.abs(alpha.velocity[:, 1]) ** 2
    )))
    defects = SurfaceDefects(conformality, lagrangian, modulus_identity)
    for name, value in defects.as_dict().items():
        if value > DRIFT_LIMIT:
            raise SurfaceConstructionError(
                f"{name} defect {value:.3e} exceeds {DRIFT_LIMIT:.1e}"
            )

    surface = SurfaceGrid(
        t_grid=alpha.param.copy(),
        s_grid=gamma.param.copy(),
        position=position,
        d_t=d_t,
        d_s=d_s,
        conformal_exponent=0.5 * np.log(factor),
        defects=defects,
    )
    event_bus.publish(SurfaceBuiltEvent(
        event_type="surface.built",
        component="surface",
        nt=surface.shape[0],
        ns=surface.shape[1],
        conformality_defect=conformality,
        lagrangian_defect=lagrangian,
        data={"alpha": alpha.family, "gamma": gamma.family},
    ))
    logger.info(
        "surface %s x %s on %dx%d grid (conformality %.2e, lagrangian %.2e)",
        alpha.family, gamma.family, surface.shape[0], surface.shape[1], conformality, lagrangian,
    )
    return surface


def c_tensor(surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve) -> SurfaceGrid:
    """Fill the C tensor; second derivatives come from the curve ODEs."""
    a, da, dda = alpha.position, alpha.velocity, alpha.acceleration
    g, dg, ddg = gamma.position, gamma.velocity, gamma.acceleration
    nt, ns = surface.shape

    g1_sq = np.abs(g[:, 0]) ** 2
    g2_sq = np.abs(g[:, 1]) ** 2
    a1_sq = np.abs(a[:, 0]) ** 2
    a2_sq = np.abs(a[:, 1]) ** 2

    ttt = (
        plane_rotation_inner(dda[:, 0], da[:, 0])[:, None] * g1_sq[None, :]
        + plane_rotation_inner(dda[:, 1], da[:, 1])[:, None] * g2_sq[None, :]
    )
    tts = np.broadcast_to(plane_rotation_inner(dg[:, 0], g[:, 0])[None, :], (nt, ns)).copy()
    tss = np.broadcast_to(plane_rotation_inner(da[:, 0], a[:, 0])[:, None], (nt, ns)).copy()
    sss = (
        a1_sq[:, None] * plane_rotation_inner(ddg[:, 0], dg[:, 0])[None, :]
        + a2_sq[:, None] * plane_rotation_inner(ddg[:, 1], dg[:, 1])[None, :]
    )
    return dataclasses.replace(surface, c_tensor=CTensor(ttt, tts, tss, sss))


def lagrangian_angle(surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve) -> SurfaceGrid:
    """Fill beta from e^{i beta} = alpha1' gamma2' / (conj(alpha2) conj(gamma1)).

    Raises:
        LagrangianAnglePoleError: |gamma1| falls below the pole threshold
        LegendreAngleError: the quotient is not of unit modulus
        UnwrapError: the grid unwrap is path dependent
    """
    g1 = gamma.position[:, 0]
    pole = np.abs(g1) < POLE_THRESHOLD
    if np.any(pole):
        j = int(np.argmax(pole))
        raise LagrangianAnglePoleError(
            f"gamma1 vanishes at s={gamma.param[j]:.6g} (sample {j}); "
            "the Lagrangian angle formula has a pole there",
            index=(0, j),
            s=float(gamma.param[j]),
        )
    numerator = alpha.velocity[:, 0][:, None] * gamma.velocity[:, 1][None, :]
    denominator = np.conj(alpha.position[:, 1])[:, None] * np.conj(g1)[None, :]
    quotient = numerator / denominator
    deviation = np.abs(np.abs(quotient) - 1.0)
    if np.max(deviation) > DRIFT_LIMIT:
        i, j = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
        raise LegendreAngleError(
            f"|e^(i beta)| deviates from 1 by {deviation[i, j]:.3e} "
            f"at t={alpha.param[i]:.6g}, s={gamma.param[j]:.6g}"
        )
    beta = unwrap_grid(np.angle(quotient), tolerance=EPS_ODE)
    return dataclasses.replace(surface, lagrangian_angle=beta)


def mean_curvature(surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve) -> SurfaceGrid:
    """Fill H = (e^{-2u}/2) (k_alpha J phi_t + k_gamma J phi_s)."""
    weight = 0.5 / surface.conformal_factor
    h = weight[..., None] * (
        alpha.curvature[:, None, None] * 1j * surface.d_t
        + gamma.curvature[None, :, None] * 1j * surface.d_s
    )
    return dataclasses.replace(surface, mean_curvature=h)


def connection_products(
    surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve
) -> ConnectionProducts:
    a, da, dda = alpha.position, alpha.velocity, alpha.acceleration
    g, dg, ddg = gamma.position, gamma.velocity, gamma.acceleration
    nt, ns = surface.shape

    def along_t(values: NDArray[np.float64]) -> RealField:
        return np.broadcast_to(values[:, None], (nt, ns)).copy()

    def along_s(values: NDArray[np.float64]) -> RealField:
        return np.broadcast_to(values[None, :], (nt, ns)).copy()

    g_rad = plane_inner(dg[:, 0], g[:, 0])
    a_rad = plane_inner(da[:, 0], a[:, 0])
    tt_t = (
        plane_inner(dda[:, 0], da[:, 0])[:, None] * np.abs(g[:, 0])[None, :] ** 2
        + plane_inner(dda[:, 1], da[:, 1])[:, None] * np.abs(g[:, 1])[None, :] ** 2
    )
    ss_s = (
        np.abs(a[:, 0])[:, None] ** 2 * plane_inner(ddg[:, 0], dg[:, 0])[None, :]
        + np.abs(a[:, 1])[:, None] ** 2 * plane_inner(ddg[:, 1], dg[:, 1])[None, :]
    )
    return ConnectionProducts(
        tt_t=tt_t,
        tt_s=along_s(-g_rad),
        ts_t=along_s(g_rad),
        ts_s=along_t(a_rad),
        ss_t=along_t(-a_rad),
        ss_s=ss_s,
    )


def parallel_h_system(
    surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve
) -> tuple[RealField, RealField, RealField]:
    """Residual fields of the parallel mean curvature equations.

    k_alpha' - u_t k_alpha + u_s k_gamma, u_t k_gamma + u_s k_alpha and
    k_gamma' - u_s k_gamma + u_t k_alpha; curvature derivatives by centered
    differences.
    """
    factor = surface.conformal_factor
    u_t = plane_inner(alpha.velocity[:, 0], alpha.position[:, 0])[:, None] / factor
    u_s = plane_inner(gamma.velocity[:, 0], gamma.position[:, 0])[None, :] / factor
    k_a = alpha.curvature[:, None]
    k_g = gamma.curvature[None, :]
    dk_a = _derivative(alpha.curvature, alpha.param)[:, None]
    dk_g = _derivative(gamma.curvature, gamma.param)[None, :]
    return (
        dk_a - u_t * k_a + u_s * k_g,
        u_t * k_g + u_s * k_a,
        dk_g - u_s * k_g + u_t * k_a,
    )


def _derivative(values: NDArray[np.float64], grid: NDArray[np.float64]) -> NDArray[np.float64]:
    if values.shape[0] < 3:
        return np.zeros_like(values)
    return np.gradient(values, grid, edge_order=2)


def gradient_law_residual(surface: SurfaceGrid) -> float:
    """max |J grad(beta) - 2H| over interior points, gradient by centered differences."""
    if surface.lagrangian_angle is None or surface.mean_curvature is None:
        raise SurfaceConstructionError("gradient law needs the Lagrangian angle and H")
    nt, ns = surface.shape
    if nt < 3 or ns < 3:
        raise SurfaceConstructionError("gradient law needs at least a 3x3 grid")
    beta_t, beta_s = np.gradient(surface.lagrangian_angle, surface.t_grid, surface.s_grid)
    weight = 1.0 / surface.conformal_factor
    j_grad = weight[..., None] * (beta_t[..., None] * 1j * surface.d_t + beta_s[..., None] * 1j * surface.d_s)
    gap = np.linalg.norm(j_grad - 2.0 * surface.mean_curvature, axis=-1)
    return float(np.max(gap[1:-1, 1:-1]))


def additive_angle_defect(surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve) -> float:
    """max |e^{i beta} + e^{i(theta_gamma + theta_alpha)}|."""
    if surface.lagrangian_angle is None:
        raise SurfaceConstructionError("Lagrangian angle has not been computed")
    if alpha.legendre_angle is None or gamma.legendre_angle is None:
        raise SurfaceConstructionError("both curves need their Legendre angles")
    theta = alpha.legendre_angle[:, None] + gamma.legendre_angle[None, :]
    return float(np.max(np.abs(np.exp(1j * surface.lagrangian_angle) + np.exp(1j * theta))))


def sphere_radius_check(surface: SurfaceGrid) -> Optional[float]:
    """Common |phi| when the surface lies on a round sphere about the origin."""
    radius = np.linalg.norm(surface.position, axis=-1)
    if float(np.ptp(radius)) < EPS_ODE:
        return float(np.mean(radius))
    return None


def analyze_surface(alpha: LegendreCurve, gamma: LegendreCurve) -> SurfaceGrid:
    """build_surface followed by the Lagrangian angle, H and C fields."""
    surface = build_surface(alpha, gamma)
    surface = lagrangian_angle(surface, alpha, gamma)
    surface = mean_curvature(surface, alpha, gamma)
    return c_tensor(surface, alpha, gamma)
