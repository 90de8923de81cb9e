#!/usr/bin/env python3
# classify.py - Minimal / parallel-H / CMC / Hamiltonian-minimal verdicts and the Willmore functional

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from scipy.integrate import simpson

from ..constants import VERDICT_THRESHOLD
from ..curves.types import LegendreCurve
from ..exceptions import QuadratureMismatchError, SurfaceConstructionError
from ..logging import get_logger
from .grid import SurfaceGrid, sphere_radius_check

logger = get_logger('surface.classify')

WILLMORE_RELATIVE_TOLERANCE = 1e-9


class Verdict:
    MINIMAL = "minimal"
    PARALLEL_H = "parallel-H"
    FLAT_TORUS = "parallel-H (flat torus)"
    CMC = "CMC"
    HAMILTONIAN_MINIMAL = "Hamiltonian-minimal"
    GENERIC = "generic"


@dataclass(frozen=True)
class CmcFit:
    """Joint fit of k_gamma^2 = 4 rho^2 |gamma1|^2 - lambda and k_alpha^2 = 4 rho^2 |alpha1|^2 + lambda."""
    rho: float
    lam: float
    residual: float
    degenerate: bool = False


@dataclass(frozen=True)
class HmFit:
    """Affine fits k_alpha = a t + b and k_gamma = a_gamma s + c.

    ``residual`` adds the worst fit error and the slope sum |a + a_gamma|.
    """
    a: float
    b: float
    c: float
    slope_gamma: float
    residual: float

    @property
    def slope_sum(self) -> float:
        return abs(self.a + self.slope_gamma)


@dataclass(frozen=True)
class WillmoreSplit:
    product_form: float
    double_integral: float

    @property
    def relative_gap(self) -> float:
        scale = max(abs(self.product_form), abs(self.double_integral))
        if scale == 0.0:
            return 0.0
        return abs(self.product_form - self.double_integral) / scale


@dataclass(frozen=True)
class ClassificationReport:
    minimal_residual: float
    parallel_h_residual: float
    cmc_fit: CmcFit
    hm_fit: HmFit
    willmore_value: float
    sphere_radius: Optional[float]
    totally_geodesic: bool
    verdicts: tuple[str, ...]
    primary_verdict: str
    threshold: float = VERDICT_THRESHOLD

    def as_dict(self) -> Dict[str, Any]:
        return {
            "primary_verdict": self.primary_verdict,
            "verdicts": list(self.verdicts),
            "threshold": self.threshold,
            "minimal_residual": self.minimal_residual,
            "parallel_h_residual": self.parallel_h_residual,
            "cmc_fit": dataclasses.asdict(self.cmc_fit),
            "hm_fit": {**dataclasses.asdict(self.hm_fit), "slope_sum": self.hm_fit.slope_sum},
            "willmore_value": self.willmore_value,
            "sphere_radius": self.sphere_radius,
            "totally_geodesic": self.totally_geodesic,
        }


def fit_cmc(alpha: LegendreCurve, gamma: LegendreCurve, threshold: float = VERDICT_THRESHOLD) -> CmcFit:
    """Least-squares (rho, lambda) shared by both curves.

    When |gamma1| and |alpha1| are both constant the system is rank one; rho
    then comes from |H|^2 = (k_alpha^2 + k_gamma^2) / (4 e^{2u}) instead.
    """
    rg2 = np.abs(gamma.position[:, 0]) ** 2
    ra2 = np.abs(alpha.position[:, 0]) ** 2
    kg2 = gamma.curvature ** 2
    ka2 = alpha.curvature ** 2

    if np.ptp(np.sqrt(rg2)) < threshold and np.ptp(np.sqrt(ra2)) < threshold:
        x = (np.mean(ka2) + np.mean(kg2)) / (np.mean(rg2) + np.mean(ra2))
        lam = float(np.mean(ka2) - x * np.mean(ra2))
        degenerate = True
    else:
        design = np.vstack([
            np.column_stack([rg2, -np.ones_like(rg2)]),
            np.column_stack([ra2, np.ones_like(ra2)]),
        ])
        rhs = np.concatenate([kg2, ka2])
        (x, lam), *_ = np.linalg.lstsq(design, rhs, rcond=None)
        lam = float(lam)
        degenerate = False

    residual = float(max(
        np.max(np.abs(kg2 - (x * rg2 - lam))),
        np.max(np.abs(ka2 - (x * ra2 + lam))),
    ))
    return CmcFit(rho=float(np.sqrt(max(x, 0.0)) / 2.0), lam=lam, residual=residual, degenerate=degenerate)


def fit_hamiltonian_minimal(alpha: LegendreCurve, gamma: LegendreCurve) -> HmFit:
    if len(alpha) < 2 or len(gamma) < 2:
        raise SurfaceConstructionError("affine curvature fits need two samples per curve")
    a, b = np.polyfit(alpha.param, alpha.curvature, 1)
    a_gamma, c = np.polyfit(gamma.param, gamma.curvature, 1)
    fit_error = max(
        np.max(np.abs(alpha.curvature - (a * alpha.param + b))),
        np.max(np.abs(gamma.curvature - (a_gamma * gamma.param + c))),
    )
    return HmFit(
        a=float(a),
        b=float(b),
        c=float(c),
        slope_gamma=float(a_gamma),
        residual=float(fit_error + abs(a + a_gamma)),
    )


def willmore_split(alpha: LegendreCurve, gamma: LegendreCurve) -> WillmoreSplit:
    """Both quadratures of W = (1/4) int int (k_alpha^2 + k_gamma^2) dt ds."""
    t, s = alpha.param, gamma.param
    ka2, kg2 = alpha.curvature ** 2, gamma.curvature ** 2
    if len(alpha) < 2 or len(gamma) < 2:
        return WillmoreSplit(0.0, 0.0)
    product = 0.25 * gamma.length * float(simpson(ka2, x=t)) + 0.25 * alpha.length * float(simpson(kg2, x=s))
    inner = simpson(ka2[:, None] + kg2[None, :], x=s, axis=1)
    double = 0.25 * float(simpson(inner, x=t))
    return WillmoreSplit(product_form=product, double_integral=double)


def willmore_functional(alpha: LegendreCurve, gamma: LegendreCurve) -> float:
    """W = (L(gamma)/4) int k_alpha^2 dt + (L(alpha)/4) int k_gamma^2 ds.

    Raises:
        QuadratureMismatchError: product and double-integral forms disagree
    """
    split = willmore_split(alpha, gamma)
    if split.relative_gap > WILLMORE_RELATIVE_TOLERANCE:
        raise QuadratureMismatchError(
            f"Willmore quadratures disagree: {split.product_form:.12g} vs "
            f"{split.double_integral:.12g} (relative {split.relative_gap:.2e})"
        )
    return split.product_form


def willmore_from_mean_curvature(surface: SurfaceGrid) -> float:
    """int int |H|^2 e^{2u} dt ds from the filled mean curvature field."""
    if surface.mean_curvature is None:
        raise SurfaceConstructionError("mean curvature has not been computed")
    if surface.shape[0] < 2 or surface.shape[1] < 2:
        return 0.0
    density = np.sum(np.abs(surface.mean_curvature) ** 2, axis=-1) * surface.conformal_factor
    return float(simpson(simpson(density, x=surface.s_grid, axis=1), x=surface.t_grid))


def classify(
    surface: SurfaceGrid,
    alpha: LegendreCurve,
    gamma: LegendreCurve,
    threshold: float = VERDICT_THRESHOLD,
) -> ClassificationReport:
    """Residuals and verdicts for the minimal, parallel-H, CMC and Hamiltonian-minimal classes."""
    if surface.lagrangian_angle is None:
        raise SurfaceConstructionError("classification needs the Lagrangian angle")
    minimal_residual = float(np.max(np.abs(gamma.curvature)) + np.max(np.abs(alpha.curvature)))
    parallel_h_residual = float(np.ptp(gamma.modulus1) + np.ptp(alpha.modulus1))
    cmc = fit_cmc(alpha, gamma, threshold)
    hm = fit_hamiltonian_minimal(alpha, gamma)
    radius = sphere_radius_check(surface)
    totally_geodesic = surface.c_tensor is not None and surface.c_tensor.max_abs() < threshold

    verdicts = []
    if minimal_residual < threshold:
        verdicts.append(Verdict.MINIMAL)
    if parallel_h_residual < threshold:
        verdicts.append(Verdict.PARALLEL_H)
    if cmc.residual < threshold and cmc.rho > threshold:
        verdicts.append(Verdict.CMC)
    if hm.residual < threshold:
        verdicts.append(Verdict.HAMILTONIAN_MINIMAL)

    if Verdict.MINIMAL in verdicts:
        primary = Verdict.MINIMAL
    elif Verdict.PARALLEL_H in verdicts:
        primary = Verdict.FLAT_TORUS if radius is not None else Verdict.PARALLEL_H
    elif Verdict.CMC in verdicts:
        primary = Verdict.CMC
    elif Verdict.HAMILTONIAN_MINIMAL in verdicts:
        primary = Verdict.HAMILTONIAN_MINIMAL
    else:
        primary = Verdict.GENERIC

    report = ClassificationReport(
        minimal_residual=minimal_residual,
        parallel_h_residual=parallel_h_residual,
        cmc_fit=cmc,
        hm_fit=hm,
        willmore_value=willmore_functional(alpha, gamma),
        sphere_radius=radius,
        totally_geodesic=totally_geodesic,
        verdicts=tuple(verdicts),
        primary_verdict=primary,
        threshold=threshold,
    )
    logger.info("classified surface as %s (%s)", primary, ", ".join(verdicts) or "no class")
    return report
