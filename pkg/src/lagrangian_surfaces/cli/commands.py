#!/usr/bin/env python3
# commands.py - curve / surface / export subcommands

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np
from numpy.typing import NDArray

from ..constants import CMC_RHO
from ..curves.io import curve_descriptor, write_curve_csv
from ..curves.legendre import curvature_of, defect_fields
from ..curves.radial import first_integral_residual
from ..curves.types import LegendreCurve
from ..exceptions import ConfigurationError
from ..logging import get_logger
from ..oracle import (
    CONFORMALITY_LIMIT,
    StencilConfig,
    fd_connection_products,
    fd_first_fundamental,
    fd_harmonicity,
    fd_lagrangian_angle_and_H,
    fd_lagrangian_defect,
    interior,
)
from ..surface import (
    SurfaceGrid,
    additive_angle_defect,
    analyze_surface,
    classify,
    connection_products,
    gradient_law_residual,
    parallel_h_system,
    willmore_from_mean_curvature,
)
from ..system.config import JobConfig
from .export import write_json, write_obj, write_surface_csv

logger = get_logger('cli')

EXIT_OK = 0
EXIT_GEOMETRY = 1
EXIT_CONFIG = 2


@dataclass
class Check:
    """One gated residual of a report."""
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self) -> Dict[str, Any]:
        return {"residual": self.residual, "tolerance": self.tolerance, "passed": self.passed}


@dataclass
class CommandResult:
    exit_code: int
    files: List[Path] = field(default_factory=list)
    report: Dict[str, Any] = field(default_factory=dict)


def _checks_dict(checks: Dict[str, Check]) -> Dict[str, Any]:
    return {name: check.as_dict() for name, check in checks.items()}


def _exit_code(checks: Dict[str, Check]) -> int:
    return EXIT_OK if all(c.passed for c in checks.values()) else EXIT_GEOMETRY


# --- curve --------------------------------------------------------

def curve_residual_columns(curve: LegendreCurve) -> Dict[str, NDArray[np.float64]]:
    """Per-sample residual columns appended to the curve CSV."""
    columns = {f"{name}_defect": values for name, values in defect_fields(curve).items()}
    columns["modulus1"] = curve.modulus1
    if len(curve) >= 3:
        columns["angle_rate_defect"] = np.abs(curvature_of(curve) - curve.curvature)
    if curve.family.startswith("cmc_profile"):
        columns["first_integral"] = np.abs(first_integral_residual(curve, CMC_RHO, 0.0, 0.0))
    return columns


def cmd_curve(cfg: JobConfig, out: Path) -> CommandResult:
    """Build one curve; write its CSV, JSON descriptor and invariant report."""
    if cfg.curve is None:
        raise ConfigurationError("the curve command needs a 'curve' section")
    curve = cfg.curve.build()
    columns = curve_residual_columns(curve)
    gate = cfg.tolerances.gate
    checks: Dict[str, Check] = {}
    for name, values in columns.items():
        if name == "modulus1":
            continue
        tolerance = cfg.tolerances.discretization_gate(curve.step) if name == "angle_rate_defect" else gate
        checks[name] = Check(float(np.max(values)), tolerance)

    result = CommandResult(exit_code=_exit_code(checks))
    if cfg.export.csv:
        result.files.append(write_curve_csv(curve, out / "curve.csv", columns))
    if cfg.export.json_report:
        result.files.append(write_json(curve_descriptor(curve), out / "curve.json"))
        result.report = {
            "job": cfg.meta.name,
            "family": curve.family,
            "ambient": curve.ambient.value,
            "samples": len(curve),
            "checks": _checks_dict(checks),
            "passed": result.exit_code == EXIT_OK,
        }
        result.files.append(write_json(result.report, out / "curve_report.json"))
    logger.info("curve %s: %d samples, exit %d", curve.family, len(curve), result.exit_code)
    return result


# --- surface ------------------------------------------------------

def _stride(n: int, target: int) -> int:
    return max(1, -(-(n - 1) // (target - 1)))


def build_pair(cfg: JobConfig) -> Tuple[LegendreCurve, LegendreCurve]:
    """(alpha, gamma) from the config, subsampled to the mesh resolution."""
    if cfg.curves is None:
        raise ConfigurationError("surface jobs need a 'curves' section with sphere and hyperbolic specs")
    alpha = cfg.curves.hyperbolic.build()
    gamma = cfg.curves.sphere.build()
    alpha = alpha.subsample(_stride(len(alpha), cfg.grid.nt))
    gamma = gamma.subsample(_stride(len(gamma), cfg.grid.ns))
    return alpha, gamma


def analytic_checks(
    surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve, cfg: JobConfig
) -> Dict[str, Check]:
    gate = cfg.tolerances.gate
    h = max(alpha.step, gamma.step)
    assert surface.mean_curvature is not None
    h_vec = surface.mean_curvature
    orthogonality = max(
        float(np.max(np.abs(np.sum(np.real(h_vec * np.conj(surface.d_t)), axis=-1)))),
        float(np.max(np.abs(np.sum(np.real(h_vec * np.conj(surface.d_s)), axis=-1)))),
    )
    checks = {
        "conformality": Check(surface.defects.conformality, gate),
        "lagrangian": Check(surface.defects.lagrangian, gate),
        "modulus_identity": Check(surface.defects.modulus_identity, gate),
        "additive_angle": Check(additive_angle_defect(surface, alpha, gamma), gate),
        "connection_antisymmetry": Check(connection_products(surface, alpha, gamma).antisymmetry_defect(), gate),
        "mean_curvature_normal": Check(orthogonality, gate),
    }
    if min(surface.shape) >= 3:
        checks["gradient_law"] = Check(gradient_law_residual(surface), cfg.tolerances.discretization_gate(h))
    return checks


def oracle_checks(
    surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve, cfg: JobConfig
) -> Dict[str, Check]:
    """Stencil re-derivation from positions compared with the analytic fields."""
    stencil = StencilConfig.for_grid(surface.t_grid, surface.s_grid, cfg.verification.stencil_order)
    tolerance = cfg.tolerances.discretization_gate(max(stencil.h_t, stencil.h_s))
    fff = fd_first_fundamental(surface.position, stencil)
    factor = interior(surface.conformal_factor, fff.margin)
    metric = max(
        float(np.max(np.abs(fff.E - factor))),
        float(np.max(np.abs(fff.G - factor))),
        float(np.max(np.abs(fff.F))),
    )
    lagrangian = fd_lagrangian_defect(surface.position, stencil).max_abs()
    angle_h = fd_lagrangian_angle_and_H(surface.position, stencil, max(CONFORMALITY_LIMIT, tolerance))
    assert surface.mean_curvature is not None and surface.lagrangian_angle is not None
    h_gap = float(np.max(np.linalg.norm(
        angle_h.H - interior(surface.mean_curvature, angle_h.margin), axis=-1
    )))
    fd_products = fd_connection_products(surface.position, stencil)
    analytic = connection_products(surface, alpha, gamma)
    products_gap = max(
        float(np.max(np.abs(fd_values - interior(getattr(analytic, name), fd_products.margin))))
        for name, fd_values in fd_products.as_dict().items()
    )
    return {
        "oracle_metric": Check(metric, tolerance),
        "oracle_lagrangian": Check(lagrangian, tolerance),
        "oracle_mean_curvature": Check(h_gap, tolerance),
        "oracle_connection": Check(products_gap, tolerance),
    }


def surface_report(
    surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve, cfg: JobConfig
) -> Tuple[Dict[str, Any], int]:
    report = classify(surface, alpha, gamma, threshold=cfg.tolerances.gate)
    checks = analytic_checks(surface, alpha, gamma, cfg)
    oracle: Dict[str, Check] = {}
    if cfg.verification.oracle:
        oracle = oracle_checks(surface, alpha, gamma, cfg)
    assert surface.mean_curvature is not None and surface.lagrangian_angle is not None
    h_norm = np.linalg.norm(surface.mean_curvature, axis=-1)
    parallel = max(float(np.max(np.abs(e))) for e in parallel_h_system(surface, alpha, gamma))
    harmonicity = None
    if min(surface.shape) >= 5:
        stencil = StencilConfig.for_grid(surface.t_grid, surface.s_grid, cfg.verification.stencil_order)
        harmonicity = fd_harmonicity(surface.lagrangian_angle, stencil).max_abs()
    payload: Dict[str, Any] = {
        "job": cfg.meta.name,
        "grid": {"nt": surface.shape[0], "ns": surface.shape[1]},
        "curves": {"alpha": alpha.family, "gamma": gamma.family},
        "classification": report.as_dict(),
        "analytic": _checks_dict(checks),
        "oracle": _checks_dict(oracle),
        "mean_curvature_norm": {"min": float(np.min(h_norm)), "max": float(np.max(h_norm))},
        "parallel_h_residual": parallel,
        "flat_harmonicity": harmonicity,
        "willmore": {
            "curve_split": report.willmore_value,
            "mean_curvature_integral": willmore_from_mean_curvature(surface),
        },
    }
    exit_code = _exit_code({**checks, **oracle})
    payload["passed"] = exit_code == EXIT_OK
    return payload, exit_code


def _write_mesh(
    surface: SurfaceGrid, alpha: LegendreCurve, gamma: LegendreCurve, cfg: JobConfig, out: Path
) -> List[Path]:
    files: List[Path] = []
    if cfg.export.obj:
        files.append(write_obj(surface, out / "surface.obj"))
    if cfg.export.csv:
        files.append(write_surface_csv(surface, out / "surface_vertices.csv"))
        files.append(write_curve_csv(alpha, out / "alpha.csv"))
        files.append(write_curve_csv(gamma, out / "gamma.csv"))
    return files


def cmd_surface(cfg: JobConfig, out: Path) -> CommandResult:
    """Build, classify and cross-check the surface; write mesh and report."""
    alpha, gamma = build_pair(cfg)
    surface = analyze_surface(alpha, gamma)
    payload, exit_code = surface_report(surface, alpha, gamma, cfg)
    result = CommandResult(exit_code=exit_code, report=payload)
    result.files.extend(_write_mesh(surface, alpha, gamma, cfg, out))
    if cfg.export.json_report:
        result.files.append(write_json(payload, out / "surface_report.json"))
    logger.info(
        "surface %s x %s: %s, exit %d",
        alpha.family, gamma.family, payload["classification"]["primary_verdict"], exit_code,
    )
    return result


def cmd_export(cfg: JobConfig, out: Path) -> CommandResult:
    """Mesh and curve files only; no classification or verification."""
    alpha, gamma = build_pair(cfg)
    surface = analyze_surface(alpha, gamma)
    return CommandResult(exit_code=EXIT_OK, files=_write_mesh(surface, alpha, gamma, cfg, out))
