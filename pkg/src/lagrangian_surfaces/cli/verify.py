#!/usr/bin/env python3
# verify.py - Seeded invariant suite behind the ``verify`` subcommand

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from ..constants import (
    CMC_RHO,
    EPS_ALG,
    EPS_ODE,
)
from ..curves.catalog import CurveFamily, create_curve
from ..curves.families import cmc_period, cmc_profile_hyperbolic, cmc_profile_sphere
from ..curves.hopf import geodesic_curvature, hopf_project, horizontal_lift
from ..curves.legendre import curve_defects, integrate_legendre
from ..curves.radial import first_integral_residual
from ..curves.types import CurvatureProfile, HyperbolicIC, LegendreCurve, SphereIC
from ..exceptions import DomainError
from ..geometry.core import AmbientQuadric
from ..logging import get_logger
from ..oracle import (
    CONFORMALITY_LIMIT,
    StencilConfig,
    fd_harmonicity,
    fd_lagrangian_angle_and_H,
    fd_lagrangian_defect,
    interior,
)
from ..special.elliptic import complete_elliptic_K, jacobi_cn_sn_dn
from ..surface import (
    SurfaceGrid,
    additive_angle_defect,
    analyze_surface,
    parallel_h_system,
    sphere_radius_check,
    willmore_split,
)
from ..system.config import JobConfig
from .commands import EXIT_GEOMETRY, EXIT_OK, CommandResult
from .export import write_json
from ..system.observability import BaseEvent, InvariantCheckEvent, event_bus

logger = get_logger('cli.verify')

S3 = AmbientQuadric.SPHERE3
H31 = AmbientQuadric.ANTI_DE_SITTER3

SURFACE_STEP = 1e-3
MESH_SAMPLES = 41
PERTURBATION = 1e-2

# random pairs
MIN_SPAN = 0.4
MAX_SPAN = 6.0
MAX_CURVATURE = 5.0
CENTRAL_WINDOW = 0.6
POLE_MARGIN = 1e-3
MAX_REDRAWS = 10


def _mesh(curve: LegendreCurve, samples: int = MESH_SAMPLES) -> LegendreCurve:
    return curve.subsample(max(1, (len(curve) - 1) // (samples - 1)))


def _central(curve: LegendreCurve, width: float = CENTRAL_WINDOW) -> LegendreCurve:
    mid = 0.5 * (curve.param[0] + curve.param[-1])
    return curve.restrict(mid - 0.5 * width, mid + 0.5 * width)


def _max_abs(values: Any) -> float:
    return float(np.max(np.abs(values)))


class VerificationSuite:
    """Runs every invariant once per seeded draw and reports the worst residuals.

    Each check is published as an ``InvariantCheckEvent``; the report is built
    from the events received, so other subscribers see the same stream.
    Nominal tolerances are capped by the configured gate.
    """

    def __init__(self, cfg: JobConfig):
        self.cfg = cfg
        self.rng = np.random.default_rng(cfg.seed)
        self.events: List[InvariantCheckEvent] = []

    # --- recording -------------------------------------------------
    def _on_event(self, event: BaseEvent) -> None:
        if isinstance(event, InvariantCheckEvent):
            self.events.append(event)

    def record(
        self,
        name: str,
        residual: float,
        nominal: float,
        negative_control: bool = False,
        discretized: bool = False,
    ) -> None:
        # stencil residuals keep their O(h^2) gate; exact ones are capped by the configured gate
        tolerance = nominal if discretized else min(nominal, self.cfg.tolerances.gate)
        if negative_control:
            # detection: the perturbation must show up above the tolerance
            passed = residual > nominal
            tolerance = nominal
        else:
            passed = residual <= tolerance
        event_bus.publish(InvariantCheckEvent(
            event_type="invariant.check",
            component="verify",
            name=name,
            residual=float(residual) if math.isfinite(residual) else float("inf"),
            tolerance=tolerance,
            passed=bool(passed),
            negative_control=negative_control,
        ))

    def _guard(self, name: str, nominal: float, fn: Callable[[], float]) -> None:
        try:
            residual = fn()
        except Exception as e:  # failures are reported, not raised
            logger.warning("check %s raised %s: %s", name, type(e).__name__, e)
            residual = float("inf")
        self.record(name, residual, nominal)

    # --- draws -----------------------------------------------------
    def _random_span(self) -> Tuple[float, float]:
        half = 0.5 * self.rng.uniform(MIN_SPAN, MAX_SPAN)
        return (-half, half)

    def _random_angle(self) -> float:
        """Uniform on (-pi, pi]."""
        return math.pi - float(self.rng.uniform(0.0, 2.0 * math.pi))

    def _random_profile(self, span: Tuple[float, float]) -> CurvatureProfile:
        """Constant, affine or tabulated profile with |k| <= MAX_CURVATURE on ``span``."""
        kind = self.rng.integers(0, 3)
        if kind == 0:
            return CurvatureProfile.constant(self.rng.uniform(-MAX_CURVATURE, MAX_CURVATURE))
        if kind == 1:
            reach = max(abs(span[0]), abs(span[1]), 1.0)
            slope = self.rng.uniform(-0.6, 0.6) * MAX_CURVATURE / reach
            return CurvatureProfile.linear(slope, self.rng.uniform(-0.4, 0.4) * MAX_CURVATURE)
        knots = np.linspace(span[0], span[1], 7)
        return CurvatureProfile.tabulated(knots, self.rng.uniform(-0.5, 0.5, size=knots.size) * MAX_CURVATURE)

    def random_pair(self) -> Tuple[LegendreCurve, LegendreCurve]:
        """A hyperbolic and a spherical curve; gamma is redrawn while gamma1 nearly vanishes."""
        for _ in range(MAX_REDRAWS):
            s_span = self._random_span()
            gamma = integrate_legendre(
                S3, self._random_profile(s_span),
                SphereIC(self.rng.uniform(0.2, 0.9), self._random_angle()),
                s_span, SURFACE_STEP, family="integrated_sphere",
            )
            if float(np.min(gamma.modulus1)) > POLE_MARGIN:
                break
            logger.debug("redrawing gamma: |gamma1| reaches %.2e", float(np.min(gamma.modulus1)))
        else:
            raise DomainError(f"no spherical draw kept |gamma1| above {POLE_MARGIN} in {MAX_REDRAWS} attempts")
        t_span = self._random_span()
        alpha = integrate_legendre(
            H31, self._random_profile(t_span),
            HyperbolicIC(self.rng.uniform(0.2, 1.0), self._random_angle()),
            t_span, SURFACE_STEP, family="integrated_hyperbolic",
        )
        return alpha, gamma

    # --- check groups ------------------------------------------------
    def check_special_functions(self) -> None:
        for modulus in self.rng.uniform(0.0, 0.99, size=self.cfg.verification.draws):
            quarter = complete_elliptic_K(float(modulus))
            x = np.linspace(-4.0 * quarter, 4.0 * quarter, 401)
            cn, sn, dn = (np.asarray(v) for v in jacobi_cn_sn_dn(x, float(modulus)))
            residual = max(_max_abs(sn**2 + cn**2 - 1.0), _max_abs(dn**2 + modulus**2 * sn**2 - 1.0))
            self.record("jacobi_identities", residual, 1e-12)

    def check_random_pairs(self) -> None:
        for _ in range(self.cfg.verification.draws):
            alpha, gamma = self.random_pair()
            self.record("curve_invariants", max(curve_defects(alpha).worst, curve_defects(gamma).worst), EPS_ODE)
            self._check_hopf(_central(gamma))
            self._check_hopf(_central(alpha))
            a, g = _mesh(alpha), _mesh(gamma)
            surface = analyze_surface(a, g)
            self.record("surface_conformality", surface.defects.conformality, EPS_ODE)
            self.record("surface_lagrangian", surface.defects.lagrangian, EPS_ODE)
            self.record("additive_angle", additive_angle_defect(surface, a, g), 10.0 * EPS_ODE)
            split = willmore_split(a, g)
            self.record("willmore_split", split.relative_gap, 1e-9)
            self._check_oracle(analyze_surface(_mesh(_central(alpha)), _mesh(_central(gamma))))

    def _check_hopf(self, curve: LegendreCurve) -> None:
        projected = hopf_project(curve)
        self.record("hopf_quadric", _max_abs(projected.quadric_residual()), EPS_ALG)
        self.record("hopf_curvature", _max_abs(geodesic_curvature(projected) - curve.curvature), 1e-5)

        def round_trip() -> float:
            lift = horizontal_lift(projected, step=curve.step)
            n = min(len(lift), len(curve))
            return _max_abs(hopf_project(lift).points[:n] - projected.points[:n])

        self._guard("lift_round_trip", 1e-5, round_trip)

    def _check_oracle(self, surface: SurfaceGrid) -> None:
        if not self.cfg.verification.oracle:
            return
        stencil = StencilConfig.for_grid(surface.t_grid, surface.s_grid, self.cfg.verification.stencil_order)
        tolerance = self.cfg.tolerances.discretization_gate(max(stencil.h_t, stencil.h_s))
        self.record(
            "oracle_lagrangian", fd_lagrangian_defect(surface.position, stencil).max_abs(), tolerance, discretized=True
        )
        fd = fd_lagrangian_angle_and_H(surface.position, stencil, max(CONFORMALITY_LIMIT, tolerance))
        assert surface.mean_curvature is not None
        gap = _max_abs(np.linalg.norm(fd.H - interior(surface.mean_curvature, fd.margin), axis=-1))
        self.record("oracle_mean_curvature", gap, tolerance, discretized=True)
        if self.cfg.verification.negative_controls:
            t, s = np.meshgrid(surface.t_grid, surface.s_grid, indexing="ij")
            perturbed = surface.position.copy()
            perturbed[..., 1] += PERTURBATION * 1j * t * s
            defect = fd_lagrangian_defect(perturbed, stencil).max_abs()
            self.record("perturbed_lagrangian", defect, 1e-2 * PERTURBATION, negative_control=True)

    def check_minimal(self) -> None:
        alpha = create_curve(CurveFamily.GEODESIC_HYPERBOLIC, {"delta": 0.0, "b": 0.0}, (0.2, 1.0), SURFACE_STEP)
        gamma = create_curve(CurveFamily.GEODESIC_SPHERE, {"psi": 0.0, "a": math.pi}, (-0.8, 0.8), SURFACE_STEP)
        surface = analyze_surface(_mesh(alpha), _mesh(gamma))
        assert surface.mean_curvature is not None
        self.record("minimal_mean_curvature", _max_abs(surface.mean_curvature), 1e-8)
        split = willmore_split(alpha, gamma)
        self.record("minimal_willmore", abs(split.product_form), 1e-12)

    def check_flat_torus(self) -> None:
        psi, delta = math.pi / 4.0, math.asinh(1.0)
        alpha = create_curve(CurveFamily.HORIZONTAL_CIRCLE_HYPERBOLIC, {"delta": delta}, (0.0, 2.0), SURFACE_STEP)
        gamma = create_curve(CurveFamily.HORIZONTAL_CIRCLE_SPHERE, {"psi": psi}, (0.0, 2.0), SURFACE_STEP)
        a, g = _mesh(alpha), _mesh(gamma)
        surface = analyze_surface(a, g)
        assert surface.mean_curvature is not None
        self.record("flat_torus_factor", _max_abs(surface.conformal_factor - 1.5), 1e-10)
        h_norm = np.linalg.norm(surface.mean_curvature, axis=-1)
        self.record("flat_torus_mean_curvature", _max_abs(h_norm - math.sqrt(3.0) / 2.0), 1e-8)
        radius = sphere_radius_check(surface)
        self.record(
            "flat_torus_radius",
            abs(radius - math.sqrt(1.5)) if radius is not None else float("inf"),
            1e-8,
        )
        parallel = max(_max_abs(e) for e in parallel_h_system(surface, a, g))
        self.record("flat_torus_parallel_h", parallel, 1e-8)

    def check_cmc(self) -> None:
        gamma = cmc_profile_sphere(step=SURFACE_STEP)
        alpha = cmc_profile_hyperbolic(step=SURFACE_STEP)
        for curve in (gamma, alpha):
            self.record("cmc_first_integral", _max_abs(first_integral_residual(curve, CMC_RHO, 0.0, 0.0)), 1e-8)
            self.record("cmc_relation", _max_abs(curve.curvature**2 - 4.0 * CMC_RHO**2 * curve.modulus1**2), 1e-7)
        surface = analyze_surface(_mesh(alpha), _mesh(gamma))
        assert surface.mean_curvature is not None
        h_norm = np.linalg.norm(surface.mean_curvature, axis=-1)
        self.record("cmc_mean_curvature", _max_abs(h_norm - CMC_RHO), 1e-5)
        for ambient, build in ((S3, cmc_profile_sphere), (H31, cmc_profile_hyperbolic)):
            period = cmc_period(ambient)
            shift = 1000
            curve = build((0.0, 1.25 * period), period / shift)
            n = len(curve) - shift
            self.record("cmc_periodicity", _max_abs(curve.position[shift:shift + n] - curve.position[:n]), 1e-7)

    def check_hamiltonian_minimal(self) -> None:
        def pair(slope_alpha: float, slope_gamma: float) -> float:
            alpha = integrate_legendre(
                H31, CurvatureProfile.linear(slope_alpha, 0.3), HyperbolicIC(0.6, 0.4),
                (-0.5, 0.5), SURFACE_STEP, family="integrated_hyperbolic",
            )
            gamma = integrate_legendre(
                S3, CurvatureProfile.linear(slope_gamma, 1.1), SphereIC(0.7, 1.0),
                (-0.5, 0.5), SURFACE_STEP, family="integrated_sphere",
            )
            surface = analyze_surface(_mesh(alpha), _mesh(gamma))
            assert surface.lagrangian_angle is not None
            stencil = StencilConfig.for_grid(surface.t_grid, surface.s_grid)
            return fd_harmonicity(surface.lagrangian_angle, stencil).max_abs()

        self.record("hamiltonian_minimal_harmonicity", pair(0.7, -0.7), 1e-5)
        if self.cfg.verification.negative_controls:
            self.record("broken_slope_sum", pair(0.7, -0.6), 1e-2, negative_control=True)

    # --- driver ----------------------------------------------------
    def run(self) -> Dict[str, Any]:
        event_bus.subscribe("invariant.check", self._on_event)
        try:
            self.check_special_functions()
            self._guard_group(self.check_random_pairs)
            self._guard_group(self.check_minimal)
            self._guard_group(self.check_flat_torus)
            self._guard_group(self.check_cmc)
            self._guard_group(self.check_hamiltonian_minimal)
        finally:
            event_bus.unsubscribe("invariant.check", self._on_event)
        return self.report()

    def _guard_group(self, group: Callable[[], None]) -> None:
        try:
            group()
        except Exception as e:
            logger.warning("check group %s aborted: %s", group.__name__, e)
            self.record(group.__name__, float("inf"), 0.0)

    def report(self) -> Dict[str, Any]:
        worst: Dict[str, Dict[str, Any]] = {}
        for event in self.events:
            entry = worst.get(event.name)
            if entry is None:
                entry = worst[event.name] = {
                    "worst_residual": event.residual,
                    "tolerance": event.tolerance,
                    "checks": 0,
                    "failures": 0,
                    "negative_control": event.negative_control,
                }
            if event.negative_control:
                entry["worst_residual"] = min(entry["worst_residual"], event.residual)
            else:
                entry["worst_residual"] = max(entry["worst_residual"], event.residual)
            entry["checks"] += 1
            entry["failures"] += 0 if event.passed else 1
        failed = sorted(name for name, entry in worst.items() if entry["failures"])
        return {
            "seed": self.cfg.seed,
            "draws": self.cfg.verification.draws,
            "gate": self.cfg.tolerances.gate,
            "invariants": worst,
            "failed": failed,
            "passed": not failed,
        }


def run_verification(cfg: JobConfig) -> Dict[str, Any]:
    return VerificationSuite(cfg).run()


def cmd_verify(cfg: JobConfig, out: Path) -> CommandResult:
    """Run the suite and write verify_report.json; failures are reported, not raised."""
    report = run_verification(cfg)
    result = CommandResult(exit_code=EXIT_OK if report["passed"] else EXIT_GEOMETRY, report=report)
    result.files.append(write_json(report, out / "verify_report.json"))
    logger.info("verification: %d invariants, %d failed", len(report["invariants"]), len(report["failed"]))
    return result
