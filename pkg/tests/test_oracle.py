import numpy as np
import pytest

from lagrangian_surfaces.curves import (
    HyperbolicIC,
    SphereIC,
    constant_curvature_hyperbolic,
    constant_curvature_sphere,
    geodesic_hyperbolic,
    geodesic_sphere,
)
from lagrangian_surfaces.exceptions import DomainError, OracleError
from lagrangian_surfaces.geometry import unit_complex_distance
from lagrangian_surfaces.oracle import (
    StencilConfig,
    fd_c_tensor,
    fd_connection_products,
    fd_first_fundamental,
    fd_harmonicity,
    fd_lagrangian_angle_and_H,
    fd_lagrangian_defect,
    interior,
)
from lagrangian_surfaces.oracle.stencils import first_derivative, second_derivative
from lagrangian_surfaces.surface import analyze_surface, connection_products


def _plane(t, s, scale_t=1.0, imaginary_s=False):
    tt, ss = np.meshgrid(t, s, indexing="ij")
    if imaginary_s:
        return np.stack([tt + 1j * ss, np.zeros_like(tt)], axis=-1).astype(np.complex128)
    return np.stack([scale_t * tt, ss], axis=-1).astype(np.complex128)


def _generic(step=1e-3):
    alpha = constant_curvature_hyperbolic(1.2, HyperbolicIC(0.3, 0.2), (0.0, 0.1), step)
    gamma = constant_curvature_sphere(0.8, SphereIC(0.4, 0.3), (0.0, 0.1), step)
    return alpha, gamma


def _oracle_h_error(alpha, gamma):
    surface = analyze_surface(alpha, gamma)
    cfg = StencilConfig.for_grid(surface.t_grid, surface.s_grid)
    fd = fd_lagrangian_angle_and_H(surface.position, cfg)
    return float(np.max(np.linalg.norm(fd.H - interior(surface.mean_curvature, fd.margin), axis=-1)))


class TestStencils:
    """Centered differences"""

    def test_fourth_order_beats_second(self):
        h = 1e-2
        x = np.arange(0.0, 1.0, h)
        values = np.tile(np.sin(x)[:, None], (1, 7))
        exact = np.cos(x)
        err2 = np.max(np.abs(first_derivative(values, h, 0, 2)[:, 0] - exact[1:-1]))
        err4 = np.max(np.abs(first_derivative(values, h, 0, 4)[:, 0] - exact[2:-2]))
        assert err4 < err2 / 100.0
        second = second_derivative(values, h, 0, 4)[:, 0]
        assert np.max(np.abs(second + np.sin(x)[2:-2])) < 1e-8

    def test_config_validation(self):
        with pytest.raises(DomainError):
            StencilConfig(order=3)
        with pytest.raises(DomainError):
            StencilConfig(h_t=0.0)
        assert StencilConfig(order=4).margin == 2

    def test_for_grid(self):
        t = np.linspace(0.0, 1.0, 11)
        cfg = StencilConfig.for_grid(t, 2.0 * t, order=4)
        assert cfg.h_t == pytest.approx(0.1)
        assert cfg.h_s == pytest.approx(0.2)
        with pytest.raises(OracleError, match="not uniform"):
            StencilConfig.for_grid(t**2, t)
        with pytest.raises(OracleError):
            StencilConfig.for_grid(np.array([0.0]), t)

    def test_grid_too_small(self):
        t = np.linspace(0.0, 1.0, 4)
        with pytest.raises(OracleError, match="too small"):
            fd_first_fundamental(_plane(t, t), StencilConfig(1.0 / 3, 1.0 / 3))


class TestSyntheticSurfaces:
    """Planes with known geometry"""

    def setup_method(self):
        self.t = np.linspace(0.0, 1.0, 21)
        self.cfg = StencilConfig(0.05, 0.05)

    def test_real_plane(self):
        phi = _plane(self.t, self.t)
        fff = fd_first_fundamental(phi, self.cfg)
        assert np.allclose(fff.E, 1.0) and np.allclose(fff.G, 1.0) and np.allclose(fff.F, 0.0)
        assert fff.conformality_defect().max() < 1e-12
        assert fd_lagrangian_defect(phi, self.cfg).max_abs() < 1e-12
        angle = fd_lagrangian_angle_and_H(phi, self.cfg)
        assert np.max(np.abs(angle.H)) < 1e-10

    def test_complex_line_is_not_lagrangian(self):
        phi = _plane(self.t, self.t, imaginary_s=True)
        assert fd_lagrangian_defect(phi, self.cfg).max_abs() == pytest.approx(1.0)

    def test_non_conformal_frame_refused(self):
        phi = _plane(self.t, self.t, scale_t=2.0)
        with pytest.raises(OracleError, match="conformality"):
            fd_lagrangian_angle_and_H(phi, self.cfg)

    def test_malformed_positions(self):
        with pytest.raises(OracleError, match="shape"):
            fd_first_fundamental(np.zeros((21, 21, 3)), self.cfg)

    def test_harmonicity(self):
        tt, ss = np.meshgrid(self.t, self.t, indexing="ij")
        harmonic = tt**2 - ss**2
        assert fd_harmonicity(harmonic, self.cfg).max_abs() < 1e-10
        assert fd_harmonicity(tt**2, self.cfg).max_abs() == pytest.approx(2.0)
        weighted = fd_harmonicity(tt**2, self.cfg, conformal_factor=np.full_like(tt, 4.0))
        assert weighted.max_abs() == pytest.approx(0.5)
        with pytest.raises(OracleError, match="shape"):
            fd_harmonicity(tt, self.cfg, conformal_factor=np.ones((3, 3)))


class TestAgainstAnalytic:
    """Stencils applied to the sampled surface reproduce the analytic fields"""

    def test_metric(self):
        alpha, gamma = _generic()
        surface = analyze_surface(alpha, gamma)
        cfg = StencilConfig.for_grid(surface.t_grid, surface.s_grid)
        fff = fd_first_fundamental(surface.position, cfg)
        factor = interior(surface.conformal_factor, fff.margin)
        assert np.max(np.abs(fff.E - factor)) < 1e-5
        assert np.max(np.abs(fff.G - factor)) < 1e-5
        assert np.max(np.abs(fff.F)) < 1e-5
        assert fd_lagrangian_defect(surface.position, cfg).max_abs() < 1e-5

    def test_lagrangian_angle(self):
        alpha, gamma = _generic()
        surface = analyze_surface(alpha, gamma)
        cfg = StencilConfig.for_grid(surface.t_grid, surface.s_grid)
        fd = fd_lagrangian_angle_and_H(surface.position, cfg)
        beta = interior(surface.lagrangian_angle, fd.beta_margin)
        assert np.max(unit_complex_distance(fd.beta, beta)) < 1e-5
        assert fd.beta_on(fd.margin).shape == fd.H.shape[:2]

    def test_mean_curvature_converges_quadratically(self):
        alpha, gamma = _generic()
        fine = _oracle_h_error(alpha, gamma)
        coarse = _oracle_h_error(alpha.subsample(2), gamma.subsample(2))
        assert fine < 1e-3
        assert coarse / fine > 3.0

    def test_geodesic_pair_oracle_is_minimal(self):
        alpha = geodesic_hyperbolic(0.0, 0.0, (0.2, 0.3), 1e-3)
        gamma = geodesic_sphere(0.0, np.pi, (-0.05, 0.05), 1e-3)
        surface = analyze_surface(alpha, gamma)
        cfg = StencilConfig.for_grid(surface.t_grid, surface.s_grid)
        assert np.max(np.abs(fd_lagrangian_angle_and_H(surface.position, cfg).H)) < 1e-5

    @pytest.mark.parametrize("order", [2, 4])
    def test_connection_products(self, order):
        alpha, gamma = _generic()
        surface = analyze_surface(alpha, gamma)
        cfg = StencilConfig.for_grid(surface.t_grid, surface.s_grid, order)
        fd = fd_connection_products(surface.position, cfg)
        analytic = connection_products(surface, alpha, gamma)
        for name, values in fd.as_dict().items():
            assert np.max(np.abs(values - interior(getattr(analytic, name), fd.margin))) < 1e-4, name

    def test_c_tensor(self):
        alpha, gamma = _generic()
        surface = analyze_surface(alpha, gamma)
        cfg = StencilConfig.for_grid(surface.t_grid, surface.s_grid)
        fd = fd_c_tensor(surface.position, cfg)
        c = surface.c_tensor
        for name in ("ttt", "tts", "tss", "sss"):
            assert np.max(np.abs(getattr(fd, name) - interior(getattr(c, name), fd.margin))) < 1e-4, name

    def test_hamiltonian_minimal_flat_laplacian(self):
        """beta_tt + beta_ss = k_alpha' + k_gamma' vanishes for constant curvatures"""
        alpha, gamma = _generic(step=1e-2)
        surface = analyze_surface(alpha, gamma)
        cfg = StencilConfig.for_grid(surface.t_grid, surface.s_grid)
        assert fd_harmonicity(surface.lagrangian_angle, cfg).max_abs() < 1e-5
