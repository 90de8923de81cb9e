#!/usr/bin/env python3
# fields.py - Surface geometry re-derived from position samples alone

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import OracleError
from ..geometry.angles import unwrap_grid
from ..geometry.core import require_finite
from ..logging import get_logger
from ..surface.grid import ConnectionProducts, CTensor
from .stencils import (
    StencilConfig,
    check_grid,
    crop,
    first_derivative,
    interior,
    second_derivative,
)

logger = get_logger('oracle')

# relative gap (|E - G| + |F|) / E tolerated before the orthonormal frame is refused
CONFORMALITY_LIMIT = 1e-3


@dataclass(frozen=True)
class ScalarField:
    values: NDArray[np.float64]
    margin: int

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class FirstFundamentalForm:
    E: NDArray[np.float64]
    F: NDArray[np.float64]
    G: NDArray[np.float64]
    margin: int

    def conformality_defect(self) -> NDArray[np.float64]:
        return (np.abs(self.E - self.G) + np.abs(self.F)) / self.E


@dataclass(frozen=True)
class AngleAndCurvature:
    """beta on the ``beta_margin`` interior, H on the (larger) ``margin`` interior."""
    beta: NDArray[np.float64]
    beta_margin: int
    H: NDArray[np.complex128]
    margin: int

    def beta_on(self, margin: int) -> NDArray[np.float64]:
        """beta cropped to a larger margin."""
        return interior(self.beta, margin - self.beta_margin)


@dataclass(frozen=True)
class _Partials:
    phi_t: NDArray[np.complex128]
    phi_s: NDArray[np.complex128]
    margin: int


def _positions(positions: ArrayLike) -> NDArray[np.complex128]:
    arr = np.asarray(positions, dtype=np.complex128)
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise OracleError(f"positions must have shape (nt, ns, 2), got {arr.shape}")
    require_finite(arr, "positions")
    return arr


def _first_partials(phi: NDArray[np.complex128], cfg: StencilConfig) -> _Partials:
    m = cfg.margin
    phi_t = crop(first_derivative(phi, cfg.h_t, 0, cfg.order), m, 1)
    phi_s = crop(first_derivative(phi, cfg.h_s, 1, cfg.order), m, 0)
    return _Partials(phi_t, phi_s, m)


def _inner(a: NDArray[np.complex128], b: NDArray[np.complex128]) -> NDArray[np.float64]:
    return np.sum(np.real(a * np.conj(b)), axis=-1)


def _j_inner(a: NDArray[np.complex128], b: NDArray[np.complex128]) -> NDArray[np.float64]:
    # <a, J b> = Im (a, b)
    return np.sum(np.imag(a * np.conj(b)), axis=-1)


def fd_first_fundamental(positions: ArrayLike, cfg: StencilConfig) -> FirstFundamentalForm:
    """E, F, G of the induced metric at interior points.

    Raises:
        OracleError: grid smaller than 5x5 or malformed positions
    """
    phi = _positions(positions)
    check_grid(phi, cfg)
    d = _first_partials(phi, cfg)
    return FirstFundamentalForm(
        E=_inner(d.phi_t, d.phi_t),
        F=_inner(d.phi_t, d.phi_s),
        G=_inner(d.phi_s, d.phi_s),
        margin=d.margin,
    )


def fd_lagrangian_defect(positions: ArrayLike, cfg: StencilConfig) -> ScalarField:
    """omega(phi_t, phi_s) at interior points."""
    phi = _positions(positions)
    check_grid(phi, cfg)
    d = _first_partials(phi, cfg)
    return ScalarField(values=-_j_inner(d.phi_t, d.phi_s), margin=d.margin)


def fd_lagrangian_angle_and_H(
    positions: ArrayLike,
    cfg: StencilConfig,
    conformality_limit: float = CONFORMALITY_LIMIT,
) -> AngleAndCurvature:
    """Lagrangian angle from the orthonormal frame e^{-u} phi_t, e^{-u} phi_s and H = (1/2) J grad beta.

    The stencil frame carries an O(h^2) conformality defect; coarse grids pass
    a ``conformality_limit`` matched to their discretization gate.

    Raises:
        OracleError: the stencil frame is too far from conformal to be orthonormalized
    """
    phi = _positions(positions)
    check_grid(phi, cfg, extra_margin=cfg.margin)
    d = _first_partials(phi, cfg)
    E, F, G = _inner(d.phi_t, d.phi_t), _inner(d.phi_t, d.phi_s), _inner(d.phi_s, d.phi_s)
    defect = float(np.max((np.abs(E - G) + np.abs(F)) / E))
    if defect > conformality_limit:
        raise OracleError(
            f"conformality defect {defect:.3e} exceeds {conformality_limit:.1e}; "
            "the coordinate frame cannot be orthonormalized"
        )
    factor = 0.5 * (E + G)
    det = d.phi_t[..., 0] * d.phi_s[..., 1] - d.phi_t[..., 1] * d.phi_s[..., 0]
    beta = unwrap_grid(np.angle(det / factor))

    m = cfg.margin
    beta_t = crop(first_derivative(beta, cfg.h_t, 0, cfg.order), m, 1)
    beta_s = crop(first_derivative(beta, cfg.h_s, 1, cfg.order), m, 0)
    phi_t, phi_s = interior(d.phi_t, m), interior(d.phi_s, m)
    weight = 0.5 / interior(factor, m)
    H = weight[..., None] * 1j * (beta_t[..., None] * phi_t + beta_s[..., None] * phi_s)
    logger.debug("oracle H on %s interior points (frame defect %.2e)", H.shape[:2], defect)
    return AngleAndCurvature(beta=beta, beta_margin=m, H=H, margin=2 * m)


def _second_partials(
    phi: NDArray[np.complex128], cfg: StencilConfig
) -> tuple[NDArray[np.complex128], NDArray[np.complex128], NDArray[np.complex128]]:
    m = cfg.margin
    phi_tt = crop(second_derivative(phi, cfg.h_t, 0, cfg.order), m, 1)
    phi_ss = crop(second_derivative(phi, cfg.h_s, 1, cfg.order), m, 0)
    phi_ts = first_derivative(first_derivative(phi, cfg.h_t, 0, cfg.order), cfg.h_s, 1, cfg.order)
    return phi_tt, phi_ts, phi_ss


def fd_connection_products(positions: ArrayLike, cfg: StencilConfig) -> ConnectionProducts:
    """<nabla_x d_y, d_z> from stencil second derivatives against stencil first derivatives."""
    phi = _positions(positions)
    check_grid(phi, cfg)
    d = _first_partials(phi, cfg)
    phi_tt, phi_ts, phi_ss = _second_partials(phi, cfg)
    return ConnectionProducts(
        tt_t=_inner(phi_tt, d.phi_t),
        tt_s=_inner(phi_tt, d.phi_s),
        ts_t=_inner(phi_ts, d.phi_t),
        ts_s=_inner(phi_ts, d.phi_s),
        ss_t=_inner(phi_ss, d.phi_t),
        ss_s=_inner(phi_ss, d.phi_s),
        margin=d.margin,
    )


def fd_c_tensor(positions: ArrayLike, cfg: StencilConfig) -> CTensor:
    """C(x, y, z) = <phi_xy, J phi_z> from stencils."""
    phi = _positions(positions)
    check_grid(phi, cfg)
    d = _first_partials(phi, cfg)
    phi_tt, phi_ts, phi_ss = _second_partials(phi, cfg)
    return CTensor(
        ttt=_j_inner(phi_tt, d.phi_t),
        tts=_j_inner(phi_tt, d.phi_s),
        tss=_j_inner(phi_ts, d.phi_s),
        sss=_j_inner(phi_ss, d.phi_s),
        margin=d.margin,
    )


def fd_harmonicity(
    beta: ArrayLike,
    cfg: StencilConfig,
    conformal_factor: Optional[ArrayLike] = None,
) -> ScalarField:
    """e^{-2u} (beta_tt + beta_ss) at interior points; flat Laplacian without a conformal factor.

    Raises:
        OracleError: grid too small or a conformal factor of the wrong shape
    """
    field = np.asarray(beta, dtype=np.float64)
    if field.ndim != 2:
        raise OracleError(f"beta must be a 2-D field, got shape {field.shape}")
    require_finite(field, "beta")
    check_grid(field, cfg)
    m = cfg.margin
    laplacian = (
        crop(second_derivative(field, cfg.h_t, 0, cfg.order), m, 1)
        + crop(second_derivative(field, cfg.h_s, 1, cfg.order), m, 0)
    )
    if conformal_factor is not None:
        weight = np.asarray(conformal_factor, dtype=np.float64)
        if weight.shape != field.shape:
            raise OracleError(
                f"conformal factor shape {weight.shape} does not match beta {field.shape}"
            )
        laplacian = laplacian / interior(weight, m)
    return ScalarField(values=laplacian, margin=m)
