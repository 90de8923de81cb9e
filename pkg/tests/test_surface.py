import importlib
import math

import numpy as np
import pytest

from lagrangian_surfaces.curves import (
    CurvatureProfile,
    HyperbolicIC,
    SphereIC,
    cmc_profile_hyperbolic,
    cmc_profile_sphere,
    constant_curvature_hyperbolic,
    constant_curvature_sphere,
    geodesic_hyperbolic,
    geodesic_sphere,
    horizontal_circle_hyperbolic,
    horizontal_circle_sphere,
    integrate_legendre,
    rotate_fibre,
)
from lagrangian_surfaces.exceptions import (
    LagrangianAnglePoleError,
    QuadratureMismatchError,
    SurfaceConstructionError,
)
from lagrangian_surfaces.geometry import AmbientQuadric, unit_complex_distance
from lagrangian_surfaces.surface import (
    Verdict,
    WillmoreSplit,
    additive_angle_defect,
    analyze_surface,
    build_surface,
    classify,
    connection_products,
    gradient_law_residual,
    lagrangian_angle,
    parallel_h_system,
    sphere_radius_check,
    willmore_from_mean_curvature,
    willmore_functional,
    willmore_split,
)
from lagrangian_surfaces.system.observability import SurfaceBuiltEvent, event_bus

H_STEP = 1e-2


def geodesic_pair():
    alpha = geodesic_hyperbolic(0.0, 0.0, (0.2, 1.0), H_STEP)
    gamma = geodesic_sphere(0.0, math.pi, (-0.8, 0.8), H_STEP)
    return alpha, gamma


def flat_torus_pair():
    alpha = horizontal_circle_hyperbolic(math.asinh(1.0), (0.0, 1.0), H_STEP)
    gamma = horizontal_circle_sphere(math.pi / 4, (0.0, 1.0), H_STEP)
    return alpha, gamma


def generic_pair():
    alpha = constant_curvature_hyperbolic(1.2, HyperbolicIC(0.3, 0.2), (0.0, 0.6), H_STEP)
    gamma = constant_curvature_sphere(0.8, SphereIC(0.4, 0.3), (0.0, 0.6), H_STEP)
    return alpha, gamma


def hamiltonian_minimal_pair(slope_gamma=-0.5):
    alpha = integrate_legendre(
        AmbientQuadric.ANTI_DE_SITTER3, CurvatureProfile.linear(0.5, -0.2),
        HyperbolicIC(0.4, 0.1), (-0.5, 0.5), H_STEP,
    )
    gamma = integrate_legendre(
        AmbientQuadric.SPHERE3, CurvatureProfile.linear(slope_gamma, 0.3),
        SphereIC(0.3, 0.2), (-0.5, 0.5), H_STEP,
    )
    return alpha, gamma


def cmc_pair():
    return cmc_profile_hyperbolic().subsample(20), cmc_profile_sphere().subsample(20)


class TestBuildSurface:
    """Assembly of phi and its construction checks"""

    @pytest.mark.parametrize("pair", [geodesic_pair, flat_torus_pair, generic_pair, hamiltonian_minimal_pair])
    def test_conformal_and_lagrangian(self, pair):
        alpha, gamma = pair()
        surface = build_surface(alpha, gamma)
        assert surface.shape == (len(alpha), len(gamma))
        assert surface.position.shape == (len(alpha), len(gamma), 2)
        assert surface.defects.conformality < 1e-9
        assert surface.defects.lagrangian < 1e-9
        assert surface.defects.modulus_identity < 1e-9

    def test_conformal_factor(self):
        alpha, gamma = generic_pair()
        surface = build_surface(alpha, gamma)
        expected = np.abs(gamma.position[:, 0])[None, :] ** 2 + np.abs(alpha.position[:, 0])[:, None] ** 2
        assert np.allclose(surface.conformal_factor, expected, atol=1e-14)

    def test_swapped_curves_rejected(self):
        alpha, gamma = generic_pair()
        with pytest.raises(SurfaceConstructionError, match="AntiDeSitter3"):
            build_surface(gamma, alpha)

    def test_singular_point(self):
        """alpha1 and gamma1 vanish together at t = 0, s = pi/2"""
        alpha = geodesic_hyperbolic(0.0, 0.0, (-0.1, 0.1), H_STEP)
        gamma = geodesic_sphere(0.0, math.pi, (1.4, 1.7), math.pi / 200)
        with pytest.raises(SurfaceConstructionError, match="singular"):
            build_surface(alpha, gamma)

    def test_publishes_event(self):
        captured = []
        handler = captured.append
        event_bus.subscribe("surface.built", handler)
        try:
            build_surface(*generic_pair())
        finally:
            event_bus.unsubscribe("surface.built", handler)
        assert captured and isinstance(captured[-1], SurfaceBuiltEvent)
        assert (captured[-1].nt, captured[-1].ns) == (61, 61)

    def test_congruent_lifts(self):
        """Fibre phases on the curves rotate phi by their sum and beta by twice it"""
        alpha, gamma = generic_pair()
        base = analyze_surface(alpha, gamma)
        rotated = analyze_surface(rotate_fibre(alpha, 0.4), rotate_fibre(gamma, -1.1))
        phase = 0.4 - 1.1
        assert np.max(np.abs(rotated.position - np.exp(1j * phase) * base.position)) < 1e-12
        assert np.max(np.abs(rotated.conformal_factor - base.conformal_factor)) < 1e-12
        assert np.max(unit_complex_distance(rotated.lagrangian_angle, base.lagrangian_angle + 2.0 * phase)) < 1e-10
        h_gap = np.linalg.norm(rotated.mean_curvature, axis=-1) - np.linalg.norm(base.mean_curvature, axis=-1)
        assert np.max(np.abs(h_gap)) < 1e-12


class TestLagrangianAngle:

    @pytest.mark.parametrize("pair", [geodesic_pair, generic_pair, hamiltonian_minimal_pair, cmc_pair])
    def test_additive_angle(self, pair):
        """e^{i beta} = -e^{i (theta_gamma + theta_alpha)}"""
        alpha, gamma = pair()
        surface = analyze_surface(alpha, gamma)
        assert additive_angle_defect(surface, alpha, gamma) < 1e-6

    def test_angle_is_continuous(self):
        alpha, gamma = generic_pair()
        beta = analyze_surface(alpha, gamma).lagrangian_angle
        assert beta is not None
        assert np.max(np.abs(np.diff(beta, axis=0))) < 0.1
        assert np.max(np.abs(np.diff(beta, axis=1))) < 0.1

    def test_pole(self):
        alpha = geodesic_hyperbolic(0.5, 0.0, (0.2, 0.6), H_STEP)
        gamma = geodesic_sphere(0.0, math.pi, (0.0, 1.7), math.pi / 200)
        surface = build_surface(alpha, gamma)
        with pytest.raises(LagrangianAnglePoleError) as err:
            lagrangian_angle(surface, alpha, gamma)
        assert err.value.index == (0, 100)
        assert err.value.s == pytest.approx(math.pi / 2)

    def test_gradient_law(self):
        """J grad beta = 2H"""
        alpha, gamma = generic_pair()
        surface = analyze_surface(alpha, gamma)
        assert gradient_law_residual(surface) < 1e-3

    def test_gradient_law_needs_fields(self):
        surface = build_surface(*generic_pair())
        with pytest.raises(SurfaceConstructionError):
            gradient_law_residual(surface)


class TestMeanCurvature:

    def test_geodesic_pair_is_minimal(self):
        surface = analyze_surface(*geodesic_pair())
        assert surface.mean_curvature is not None
        assert np.max(np.abs(surface.mean_curvature)) < 1e-8

    def test_curved_pair_is_not_minimal(self):
        surface = analyze_surface(*generic_pair())
        assert surface.mean_curvature is not None
        assert np.min(np.linalg.norm(surface.mean_curvature, axis=-1)) > 1e-3

    def test_flat_torus(self):
        alpha, gamma = flat_torus_pair()
        surface = analyze_surface(alpha, gamma)
        assert surface.mean_curvature is not None
        assert np.max(np.abs(surface.conformal_factor - 1.5)) < 1e-10
        assert np.max(np.abs(np.linalg.norm(surface.mean_curvature, axis=-1) - math.sqrt(3.0) / 2)) < 1e-8
        radius = sphere_radius_check(surface)
        assert radius == pytest.approx(math.sqrt(1.5), abs=1e-8)
        for residual in parallel_h_system(surface, alpha, gamma):
            assert np.max(np.abs(residual)) < 1e-8

    def test_cmc_torus(self):
        surface = analyze_surface(*cmc_pair())
        assert surface.mean_curvature is not None
        assert np.max(np.abs(np.linalg.norm(surface.mean_curvature, axis=-1) - 1.5)) < 1e-5
        assert sphere_radius_check(surface) is None

    def test_mean_curvature_is_normal(self):
        surface = analyze_surface(*generic_pair())
        h = surface.mean_curvature
        assert h is not None
        assert np.max(np.abs(np.sum(np.real(h * np.conj(surface.d_t)), axis=-1))) < 1e-12
        assert np.max(np.abs(np.sum(np.real(h * np.conj(surface.d_s)), axis=-1))) < 1e-12


class TestCubicForm:
    """C tensor and the connection products"""

    @pytest.mark.parametrize("pair", [generic_pair, hamiltonian_minimal_pair, cmc_pair])
    def test_trace_identities(self, pair):
        alpha, gamma = pair()
        surface = analyze_surface(alpha, gamma)
        c = surface.c_tensor
        assert c is not None
        factor = surface.conformal_factor
        assert np.max(np.abs(c.ttt + c.tss - alpha.curvature[:, None] * factor)) < 1e-10
        assert np.max(np.abs(c.tts + c.sss - gamma.curvature[None, :] * factor)) < 1e-10

    def test_geodesic_pair_is_totally_geodesic(self):
        surface = analyze_surface(*geodesic_pair())
        assert surface.c_tensor is not None
        assert surface.c_tensor.max_abs() < 1e-12

    def test_connection_products_on_geodesic_pair(self):
        alpha, gamma = geodesic_pair()
        surface = build_surface(alpha, gamma)
        products = connection_products(surface, alpha, gamma)
        s = gamma.param
        assert np.allclose(products.tt_s, (np.sin(s) * np.cos(s))[None, :], atol=1e-12)
        assert products.antisymmetry_defect() < 1e-14
        assert set(products.as_dict()) == {"tt_t", "tt_s", "ts_t", "ts_s", "ss_t", "ss_s"}


class TestClassification:

    def test_minimal(self):
        alpha, gamma = geodesic_pair()
        report = classify(analyze_surface(alpha, gamma), alpha, gamma)
        assert report.primary_verdict == Verdict.MINIMAL
        assert report.totally_geodesic
        assert report.willmore_value == pytest.approx(0.0, abs=1e-15)

    def test_flat_torus(self):
        alpha, gamma = flat_torus_pair()
        report = classify(analyze_surface(alpha, gamma), alpha, gamma)
        assert report.primary_verdict == Verdict.FLAT_TORUS
        assert Verdict.PARALLEL_H in report.verdicts
        assert Verdict.CMC in report.verdicts
        assert report.cmc_fit.degenerate
        assert report.cmc_fit.rho == pytest.approx(math.sqrt(3.0) / 2, abs=1e-8)
        assert report.sphere_radius == pytest.approx(math.sqrt(1.5), abs=1e-8)

    def test_cmc(self):
        alpha, gamma = cmc_pair()
        report = classify(analyze_surface(alpha, gamma), alpha, gamma)
        assert report.primary_verdict == Verdict.CMC
        assert not report.cmc_fit.degenerate
        assert report.cmc_fit.rho == pytest.approx(1.5, abs=1e-6)
        assert report.cmc_fit.lam == pytest.approx(0.0, abs=1e-6)

    def test_hamiltonian_minimal(self):
        alpha, gamma = hamiltonian_minimal_pair()
        report = classify(analyze_surface(alpha, gamma), alpha, gamma)
        assert report.primary_verdict == Verdict.HAMILTONIAN_MINIMAL
        assert report.hm_fit.a == pytest.approx(0.5, abs=1e-9)
        assert report.hm_fit.slope_sum < 1e-9

    def test_broken_slope_sum_is_generic(self):
        alpha, gamma = hamiltonian_minimal_pair(slope_gamma=-0.4)
        report = classify(analyze_surface(alpha, gamma), alpha, gamma)
        assert report.primary_verdict == Verdict.GENERIC
        assert report.hm_fit.slope_sum == pytest.approx(0.1, abs=1e-9)

    def test_report_as_dict(self):
        alpha, gamma = generic_pair()
        payload = classify(analyze_surface(alpha, gamma), alpha, gamma).as_dict()
        assert payload["primary_verdict"] in {Verdict.GENERIC, Verdict.HAMILTONIAN_MINIMAL}
        assert {"cmc_fit", "hm_fit", "willmore_value", "verdicts"} <= set(payload)

    def test_needs_lagrangian_angle(self):
        alpha, gamma = generic_pair()
        with pytest.raises(SurfaceConstructionError):
            classify(build_surface(alpha, gamma), alpha, gamma)


class TestWillmore:

    @pytest.mark.parametrize("pair", [generic_pair, hamiltonian_minimal_pair, cmc_pair, flat_torus_pair])
    def test_split_forms_agree(self, pair):
        alpha, gamma = pair()
        split = willmore_split(alpha, gamma)
        assert split.relative_gap < 1e-9
        assert willmore_functional(alpha, gamma) == pytest.approx(split.product_form)

    def test_matches_mean_curvature_integral(self):
        alpha, gamma = generic_pair()
        surface = analyze_surface(alpha, gamma)
        assert willmore_from_mean_curvature(surface) == pytest.approx(willmore_functional(alpha, gamma), rel=1e-8)

    def test_flat_torus_value(self):
        """W = (1/4) k_alpha^2 L_alpha L_gamma with k_alpha^2 = 9/2"""
        alpha, gamma = flat_torus_pair()
        assert willmore_functional(alpha, gamma) == pytest.approx(0.25 * 4.5 * 1.0 * 1.0, rel=1e-12)

    def test_geodesic_pair_is_zero(self):
        assert willmore_functional(*geodesic_pair()) == 0.0

    def test_mismatch_detected(self):
        split = WillmoreSplit(product_form=1.0, double_integral=1.1)
        assert split.relative_gap == pytest.approx(0.1 / 1.1)
        assert WillmoreSplit(0.0, 0.0).relative_gap == 0.0

    def test_mismatch_raises(self, monkeypatch):
        classify_module = importlib.import_module("lagrangian_surfaces.surface.classify")

        monkeypatch.setattr(classify_module, "willmore_split", lambda a, g: WillmoreSplit(1.0, 2.0))
        with pytest.raises(QuadratureMismatchError):
            classify_module.willmore_functional(*generic_pair())
