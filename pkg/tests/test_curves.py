import math

import numpy as np
import pytest

from lagrangian_surfaces.constants import CMC_RHO
from lagrangian_surfaces.curves import (
    CurvatureProfile,
    CurveFamily,
    HyperbolicBranch,
    HyperbolicIC,
    LegendreCurve,
    RadialProfile,
    SphereIC,
    cmc_period,
    cmc_profile_hyperbolic,
    cmc_profile_sphere,
    constant_curvature_hyperbolic,
    constant_curvature_sphere,
    create_curve,
    curvature_of,
    curve_defects,
    curve_descriptor,
    curve_from_descriptor,
    first_integral_residual,
    from_radial_profile,
    geodesic_curvature,
    geodesic_hyperbolic,
    geodesic_sphere,
    hopf_project,
    horizontal_circle_hyperbolic,
    horizontal_circle_period,
    horizontal_circle_sphere,
    horizontal_lift,
    hyperbolic_branch,
    integrate_legendre,
    is_closed_lift,
    legendre_angle,
    profile_from_mapping,
    projected_speed,
    radial_derivative,
    read_curve_csv,
    rotate_fibre,
    rotate_first_component,
    write_curve_csv,
)
from lagrangian_surfaces.curves.hopf import lorentz_inner
from lagrangian_surfaces.curves.integrator import half_step_curvature, integrate_jets, make_grid
from lagrangian_surfaces.exceptions import DomainError, IntegrationDriftError, LegendreAngleError
from lagrangian_surfaces.geometry import AmbientQuadric

S3 = AmbientQuadric.SPHERE3
H31 = AmbientQuadric.ANTI_DE_SITTER3
SPAN = (-1.0, 1.5)


class TestClosedFormFamilies:
    """Closed-form curves satisfy the Legendre invariants exactly"""

    @pytest.mark.parametrize("curve", [
        geodesic_sphere(0.4, 1.2, SPAN),
        geodesic_hyperbolic(0.7, -2.0, SPAN),
        constant_curvature_sphere(1.3, SphereIC(0.2, 0.5), SPAN),
        constant_curvature_hyperbolic(3.0, HyperbolicIC(0.3, 1.0), SPAN),
        constant_curvature_hyperbolic(1.0, HyperbolicIC(0.3, 1.0), SPAN),
        constant_curvature_hyperbolic(2.0, HyperbolicIC(0.3, 1.0), SPAN),
        constant_curvature_hyperbolic(-2.0, HyperbolicIC(0.3, 1.0), SPAN),
        horizontal_circle_sphere(0.5, SPAN),
        horizontal_circle_hyperbolic(0.6, SPAN),
        cmc_profile_sphere(),
        cmc_profile_hyperbolic(),
    ], ids=lambda c: c.family)
    def test_invariants(self, curve):
        assert curve_defects(curve).worst < 1e-10
        assert curve.legendre_angle is not None
        assert np.max(np.abs(curvature_of(curve) - curve.curvature)) < 1e-4

    def test_default_geodesics(self):
        """psi=0, a=pi and delta=0, b=0 give the coordinate circles"""
        s = np.linspace(0.0, 1.0, 1001)
        gamma = geodesic_sphere(0.0, math.pi, (0.0, 1.0))
        alpha = geodesic_hyperbolic(0.0, 0.0, (0.0, 1.0))
        assert np.allclose(gamma.position[:, 0], np.cos(s))
        assert np.allclose(gamma.position[:, 1], np.sin(s))
        assert np.allclose(alpha.position[:, 0], np.sinh(s))
        assert np.allclose(alpha.position[:, 1], np.cosh(s))
        assert np.allclose(gamma.curvature, 0.0)

    def test_horizontal_circle_curvatures(self):
        psi, delta = 0.5, 0.6
        gamma = horizontal_circle_sphere(psi, (0.0, 1.0))
        alpha = horizontal_circle_hyperbolic(delta, (0.0, 1.0))
        assert gamma.curvature[0] == pytest.approx(-2.0 / math.tan(2.0 * psi))
        assert alpha.curvature[0] == pytest.approx(2.0 / math.tanh(2.0 * delta))
        assert np.ptp(gamma.modulus1) < 1e-14
        assert np.ptp(alpha.modulus1) < 1e-14

    def test_clifford_circle_is_geodesic(self):
        gamma = horizontal_circle_sphere(math.pi / 4, (0.0, 1.0))
        assert np.max(np.abs(gamma.curvature)) < 1e-15

    def test_horizontal_circle_domain(self):
        with pytest.raises(DomainError):
            horizontal_circle_sphere(0.0)
        with pytest.raises(DomainError):
            horizontal_circle_sphere(math.pi / 2)
        with pytest.raises(DomainError):
            horizontal_circle_hyperbolic(0.0)

    def test_closed_lifts(self):
        assert is_closed_lift(math.pi / 4)
        assert is_closed_lift(math.pi / 3)
        assert not is_closed_lift(0.5)
        assert horizontal_circle_period(math.pi / 4) == pytest.approx(math.pi)

    def test_hyperbolic_branches(self):
        assert hyperbolic_branch(3.0) is HyperbolicBranch.OSCILLATORY
        assert hyperbolic_branch(-0.5) is HyperbolicBranch.EXPONENTIAL
        assert hyperbolic_branch(2.0) is HyperbolicBranch.RESONANT_POSITIVE
        assert hyperbolic_branch(-2.0) is HyperbolicBranch.RESONANT_NEGATIVE

    def test_initial_condition_domain(self):
        with pytest.raises(DomainError):
            SphereIC(-0.1, 0.0)
        with pytest.raises(DomainError):
            SphereIC(0.3, 4.0)
        with pytest.raises(DomainError):
            HyperbolicIC(-1.0, 0.0)


class TestIntegration:
    """RK4 integration of the Legendre equation"""

    @pytest.mark.parametrize("c", [0.0, 1.3, -2.5])
    def test_constant_profile_matches_sphere_closed_form(self, c):
        ic = SphereIC(0.35, -0.8)
        exact = constant_curvature_sphere(c, ic, SPAN)
        integrated = integrate_legendre(S3, CurvatureProfile.constant(c), ic, SPAN)
        assert np.max(np.abs(integrated.position - exact.position)) < 1e-8
        assert np.max(np.abs(integrated.velocity - exact.velocity)) < 1e-8

    @pytest.mark.parametrize("b0", [3.0, 1.0, 2.0])
    def test_constant_profile_matches_hyperbolic_closed_form(self, b0):
        ic = HyperbolicIC(0.4, 0.9)
        exact = constant_curvature_hyperbolic(b0, ic, SPAN)
        integrated = integrate_legendre(H31, CurvatureProfile.constant(b0), ic, SPAN)
        assert np.max(np.abs(integrated.position - exact.position)) < 1e-8

    def test_linear_profile_keeps_invariants(self):
        curve = integrate_legendre(H31, CurvatureProfile.linear(1.5, -0.5), HyperbolicIC(0.2, 0.3), (-2.0, 2.0))
        assert curve_defects(curve).worst < 1e-6
        assert np.allclose(curve.curvature, 1.5 * curve.param - 0.5)
        assert np.max(np.abs(curvature_of(curve) - curve.curvature)) < 1e-4

    def test_tabulated_profile(self):
        x = np.linspace(-2.0, 2.0, 9)
        profile = CurvatureProfile.tabulated(x, np.sin(x))
        curve = integrate_legendre(S3, profile, SphereIC(0.6, 0.1), (-1.0, 1.0))
        assert curve_defects(curve).worst < 1e-6
        assert curve.parameters["profile"]["kind"] == "tabulated"

    def test_profile_sampled_once_on_half_step_grid(self):
        profile = CurvatureProfile.linear(0.8, 0.2)
        calls = []

        def counted(x):
            calls.append(np.shape(x))
            return profile(x)

        grid, origin, _ = make_grid((-1.0, 1.0), 1e-2)
        p0, v0 = SphereIC(0.4, 0.2).jet()
        integrate_jets(S3, counted, p0, v0, grid, origin)
        assert calls == [(2 * grid.size - 1,)]
        nodes = half_step_curvature(lambda x: x, grid)
        assert np.allclose(nodes[::2], grid)
        assert np.allclose(nodes[1::2], 0.5 * (grid[:-1] + grid[1:]))
        assert np.allclose(half_step_curvature(CurvatureProfile.constant(2.0), grid), 2.0)

    def test_stage_curvature_follows_direction(self):
        """Forward and backward sweeps sample k at their own stage abscissae"""
        curve = integrate_legendre(S3, CurvatureProfile.linear(-2.0, 0.5), SphereIC(0.5, -0.4), (-1.5, 1.5))
        backward, forward = curve.param < 0.0, curve.param > 0.0
        recovered = curvature_of(curve)
        assert np.max(np.abs(recovered[backward] - curve.curvature[backward])) < 1e-4
        assert np.max(np.abs(recovered[forward] - curve.curvature[forward])) < 1e-4

    def test_grid_contains_origin_samples(self):
        curve = integrate_legendre(S3, CurvatureProfile.constant(0.5), SphereIC(0.3, 0.0), (0.5, 1.0))
        assert curve.param[0] == pytest.approx(0.5)
        assert curve.param[-1] == pytest.approx(1.0)
        assert len(curve) == 501

    def test_drift_aborts(self):
        with pytest.raises(IntegrationDriftError) as err:
            integrate_legendre(S3, CurvatureProfile.constant(5.0), SphereIC(0.3, 0.0), (0.0, 20.0), step=0.5)
        assert err.value.quantity in {"quadric", "speed", "tangency", "legendre"}

    def test_ic_must_match_ambient(self):
        with pytest.raises(DomainError, match="SphereIC"):
            integrate_legendre(H31, CurvatureProfile.constant(0.0), SphereIC(0.3, 0.0), (0.0, 1.0))

    def test_bad_span(self):
        with pytest.raises(DomainError):
            integrate_legendre(S3, CurvatureProfile.constant(0.0), SphereIC(0.3, 0.0), (1.0, 0.0))
        with pytest.raises(DomainError):
            integrate_legendre(S3, CurvatureProfile.constant(0.0), SphereIC(0.3, 0.0), (0.0, 1.0), step=-1e-3)

    def test_tabulated_profile_validation(self):
        with pytest.raises(DomainError):
            CurvatureProfile.tabulated([0.0, 0.0, 1.0], [1.0, 2.0, 3.0])
        with pytest.raises(DomainError):
            CurvatureProfile.tabulated([0.0, 1.0], [1.0])


class TestCurveOperations:

    def test_legendre_angle_requires_unit_determinant(self):
        n = 5
        curve = LegendreCurve(
            ambient=S3,
            param=np.linspace(0.0, 1.0, n),
            position=np.tile(np.array([1.0, 0.0], dtype=np.complex128), (n, 1)),
            velocity=np.tile(np.array([0.0, 0.5], dtype=np.complex128), (n, 1)),
            curvature=np.zeros(n),
        )
        with pytest.raises(LegendreAngleError):
            legendre_angle(curve)
        with pytest.raises(DomainError, match="not been computed"):
            curvature_of(curve)

    def test_malformed_curve(self):
        with pytest.raises(DomainError):
            LegendreCurve(
                ambient=S3,
                param=np.array([0.0, 1.0]),
                position=np.zeros((3, 2), dtype=np.complex128),
                velocity=np.zeros((2, 2), dtype=np.complex128),
                curvature=np.zeros(2),
            )

    def test_subsample(self):
        curve = geodesic_sphere(0.3, 0.2, (0.0, 1.0))
        half = curve.subsample(2)
        assert len(half) == 501
        assert half.step == pytest.approx(2e-3)
        assert half.legendre_angle is not None and len(half.legendre_angle) == 501
        with pytest.raises(DomainError):
            curve.subsample(0)

    def test_restrict(self):
        curve = geodesic_sphere(0.3, 0.2, (-1.0, 1.0))
        window = curve.restrict(-0.25, 0.25)
        assert len(window) == 501
        assert window.param[0] == pytest.approx(-0.25)
        assert window.step == pytest.approx(curve.step)
        assert np.array_equal(window.legendre_angle, curve.legendre_angle[750:1251])
        assert np.array_equal(window.position, curve.position[750:1251])
        with pytest.raises(DomainError, match="no samples"):
            curve.restrict(2.0, 3.0)

    def test_rotate_fibre_keeps_projection(self):
        curve = constant_curvature_sphere(0.8, SphereIC(0.4, 0.3), (0.0, 2.0))
        rotated = rotate_fibre(curve, 1.1)
        assert np.max(np.abs(hopf_project(rotated).points - hopf_project(curve).points)) < 1e-14
        assert rotated.parameters["fibre_phase"] == pytest.approx(1.1)
        assert curve_defects(rotated).worst < 1e-10

    def test_rotate_first_component_turns_projection(self):
        curve = constant_curvature_sphere(0.8, SphereIC(0.4, 0.3), (0.0, 2.0))
        phi = 0.7
        rotated = hopf_project(rotate_first_component(curve, phi)).points
        original = hopf_project(curve).points
        c, s = math.cos(phi), math.sin(phi)
        expected = np.column_stack([
            c * original[:, 0] - s * original[:, 1],
            s * original[:, 0] + c * original[:, 1],
            original[:, 2],
        ])
        assert np.max(np.abs(rotated - expected)) < 1e-14


class TestRadialProfiles:
    """Curves from r = |x_1| and the CMC first integrals"""

    def test_constant_radius_gives_horizontal_circle(self):
        psi = 0.5
        c = math.cos(psi)
        profile = RadialProfile(
            r=lambda x: np.full_like(x, c),
            dr=lambda x: np.zeros_like(x),
            ddr=lambda x: np.zeros_like(x),
        )
        curve = from_radial_profile(S3, profile, (0.0, 2.0))
        reference = horizontal_circle_sphere(psi, (0.0, 2.0))
        assert np.max(np.abs(curve.position - reference.position)) < 1e-10
        assert np.max(np.abs(curve.curvature - reference.curvature)) < 1e-10

    def test_radius_outside_sphere(self):
        profile = RadialProfile(r=lambda x: np.full_like(x, 1.2), dr=lambda x: np.zeros_like(x))
        with pytest.raises(DomainError):
            from_radial_profile(S3, profile, (0.0, 1.0))

    @pytest.mark.parametrize("make", [cmc_profile_sphere, cmc_profile_hyperbolic])
    def test_cmc_first_integral(self, make):
        curve = make()
        residual = first_integral_residual(curve, CMC_RHO, 0.0, 0.0)
        assert np.max(np.abs(residual)) < 1e-8

    def test_cmc_radial_equations(self):
        """r'^2 + r^2 + r^4 = 1 on S^3 and r'^2 - r^2 + r^4 = 1 on H^3_1"""
        gamma, alpha = cmc_profile_sphere(), cmc_profile_hyperbolic()
        rg, drg = gamma.modulus1, radial_derivative(gamma)
        ra, dra = alpha.modulus1, radial_derivative(alpha)
        assert np.max(np.abs(drg**2 + rg**2 + rg**4 - 1.0)) < 1e-8
        assert np.max(np.abs(dra**2 - ra**2 + ra**4 - 1.0)) < 1e-8

    def test_cmc_curvature_is_three_r(self):
        """k^2 = 9 r^2 along both generators"""
        for curve in (cmc_profile_sphere(), cmc_profile_hyperbolic()):
            assert np.max(np.abs(curve.curvature**2 - 9.0 * curve.modulus1**2)) < 1e-10

    @pytest.mark.parametrize("ambient", [S3, H31])
    def test_cmc_periodicity(self, ambient):
        period = cmc_period(ambient)
        make = cmc_profile_sphere if ambient is S3 else cmc_profile_hyperbolic
        curve = make(span=(0.0, 1.25 * period), step=period / 1000.0)
        head = curve.position[:200]
        shifted = curve.position[1000:1200]
        assert np.max(np.abs(head - shifted)) < 1e-7

    def test_first_integral_rejects_bad_rho(self):
        with pytest.raises(DomainError):
            first_integral_residual(cmc_profile_sphere(), 0.0, 0.0, 0.0)


class TestHopf:
    """Projection to S^2(1/2) and H^2(-1/2) and horizontal lifts"""

    def test_sphere_projection(self):
        gamma = constant_curvature_sphere(1.7, SphereIC(0.5, 0.4), SPAN)
        projected = hopf_project(gamma)
        assert np.max(np.abs(np.linalg.norm(projected.points, axis=1) - 0.5)) < 1e-10
        assert np.max(np.abs(projected_speed(projected) - 1.0)) < 1e-10
        assert np.max(np.abs(geodesic_curvature(projected) - gamma.curvature)) < 1e-8

    def test_hyperbolic_projection(self):
        alpha = constant_curvature_hyperbolic(0.9, HyperbolicIC(0.5, -0.4), SPAN)
        projected = hopf_project(alpha)
        assert np.max(np.abs(lorentz_inner(projected.points, projected.points) + 0.25)) < 1e-10
        assert np.all(projected.points[:, 2] > 0.0)
        assert np.max(np.abs(projected_speed(projected) - 1.0)) < 1e-10
        assert np.max(np.abs(geodesic_curvature(projected) - alpha.curvature)) < 1e-8

    @pytest.mark.parametrize("curve", [
        horizontal_circle_sphere(0.6, (0.0, 2.0)),
        horizontal_circle_hyperbolic(0.5, (0.0, 2.0)),
    ], ids=lambda c: c.family)
    def test_lift_round_trip(self, curve):
        projected = hopf_project(curve)
        lift = horizontal_lift(projected)
        assert lift.ambient is curve.ambient
        assert np.max(np.abs(hopf_project(lift).points - projected.points)) < 1e-5
        assert np.max(np.abs(lift.curvature - curve.curvature)) < 1e-5

    def test_lift_phase_is_global_factor(self):
        projected = hopf_project(horizontal_circle_sphere(0.6, (0.0, 1.0)))
        a = horizontal_lift(projected, phase=0.0)
        b = horizontal_lift(projected, phase=0.8)
        ratio = b.position[:, 0] / a.position[:, 0]
        assert np.max(np.abs(ratio - np.exp(0.8j))) < 1e-8


class TestCatalogAndIo:

    def test_every_family_builds(self):
        params = {
            CurveFamily.CONSTANT_CURVATURE_SPHERE: {"c": 0.5},
            CurveFamily.CONSTANT_CURVATURE_HYPERBOLIC: {"b0": 2.5},
            CurveFamily.HORIZONTAL_CIRCLE_SPHERE: {"psi": 0.4},
            CurveFamily.HORIZONTAL_CIRCLE_HYPERBOLIC: {"delta": 0.4},
            CurveFamily.INTEGRATED_SPHERE: {"profile": {"kind": "linear", "a": 0.5, "b": 0.0}},
            CurveFamily.INTEGRATED_HYPERBOLIC: {"profile": {"kind": "constant", "c": 1.0}},
            CurveFamily.RADIAL_SPHERE: {"radial": {"x": [-1.0, 0.0, 1.0], "r": [0.6, 0.6, 0.6]}},
            CurveFamily.RADIAL_HYPERBOLIC: {"radial": {"x": [-1.0, 0.0, 1.0], "r": [0.8, 0.8, 0.8]}},
            CurveFamily.HOPF_LIFT_SPHERE: {"source": {"family": "geodesic_sphere", "psi": 0.4, "a": 1.0}},
            CurveFamily.HOPF_LIFT_HYPERBOLIC: {"source": {"family": "geodesic_hyperbolic", "delta": 0.3, "b": 0.2}},
        }
        for family in CurveFamily:
            curve = create_curve(family, params.get(family, {}), (-0.5, 0.5), 1e-2)
            assert curve.ambient is family.ambient
            assert curve.family == family.value

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="Unknown curve family"):
            create_curve("clothoid")  # type: ignore[arg-type]
        with pytest.raises(ValueError, match="Unknown curvature profile kind"):
            create_curve(CurveFamily.INTEGRATED_SPHERE, {"profile": {"kind": "cubic"}})

    def test_descriptor_rebuilds_curve(self):
        curve = create_curve(CurveFamily.CONSTANT_CURVATURE_HYPERBOLIC, {"b0": 1.0, "delta": 0.2, "b": 0.5}, (0.0, 1.0))
        descriptor = curve_descriptor(curve)
        assert descriptor["ambient"] == "AntiDeSitter3"
        assert descriptor["samples"] == 1001
        rebuilt = curve_from_descriptor(descriptor)
        assert np.max(np.abs(rebuilt.position - curve.position)) < 1e-12
        with pytest.raises(ValueError, match="Unknown curve family"):
            curve_from_descriptor({**descriptor, "family": "radial_profile"})

    def test_radial_family_reproduces_horizontal_circle(self):
        psi = 0.5
        r = math.cos(psi)
        curve = create_curve(CurveFamily.RADIAL_SPHERE, {"radial": {"x": [0.0, 1.0, 2.0], "r": [r, r, r]}}, (0.0, 2.0))
        assert curve.family == "radial_sphere"
        assert np.allclose(curve.modulus1, r)
        assert np.allclose(curve.curvature, -2.0 / math.tan(2.0 * psi), atol=1e-8)
        assert curve_defects(curve).worst < 1e-8
        rebuilt = curve_from_descriptor(curve_descriptor(curve))
        assert np.max(np.abs(rebuilt.position - curve.position)) < 1e-12

    def test_radial_derived_profile(self):
        delta = 0.4
        r = math.sinh(delta)
        params = {
            "profile": {"kind": "radial_derived", "x": [-1.0, 0.0, 1.0], "r": [r, r, r]},
            "delta": 0.2,
            "b": 0.1,
        }
        curve = create_curve(CurveFamily.INTEGRATED_HYPERBOLIC, params, (-0.5, 0.5))
        assert np.allclose(curve.curvature, 2.0 / math.tanh(2.0 * delta), atol=1e-8)
        assert curve.parameters["profile"]["kind"] == "radial_derived"
        rebuilt = curve_from_descriptor(curve_descriptor(curve))
        assert np.max(np.abs(rebuilt.position - curve.position)) < 1e-12
        with pytest.raises(ValueError, match="ambient"):
            profile_from_mapping(params["profile"])

    def test_hopf_lift_family(self):
        source = {"family": "constant_curvature_sphere", "c": 1.2, "psi": 0.4, "a": 0.3}
        lift = create_curve(CurveFamily.HOPF_LIFT_SPHERE, {"source": source, "phase": 0.7}, (0.0, 1.0))
        original = constant_curvature_sphere(1.2, SphereIC(0.4, 0.3), (0.0, 1.0))
        assert lift.family == "hopf_lift_sphere"
        assert lift.parameters == {"source": source, "phase": 0.7}
        assert np.max(np.abs(hopf_project(lift).points - hopf_project(original).points)) < 1e-6
        assert np.angle(lift.position[0, 0]) == pytest.approx(0.7)
        assert np.allclose(lift.curvature, 1.2, atol=1e-6)
        rebuilt = curve_from_descriptor(curve_descriptor(lift))
        assert np.max(np.abs(rebuilt.position - lift.position)) < 1e-12
        with pytest.raises(ValueError, match="needs a source"):
            create_curve(CurveFamily.HOPF_LIFT_HYPERBOLIC, {"source": source}, (0.0, 1.0))

    def test_csv(self, tmp_path):
        curve = horizontal_circle_sphere(0.5, (0.0, 1.0), 1e-2)
        path = write_curve_csv(curve, tmp_path / "sub" / "curve.csv", {"extra": np.ones(len(curve))})
        columns = read_curve_csv(path)
        assert list(columns)[:2] == ["param", "pos1_re"]
        assert np.allclose(columns["pos1_re"], curve.position[:, 0].real, atol=1e-8)
        assert np.allclose(columns["curvature"], curve.curvature)
        assert np.allclose(columns["extra"], 1.0)
