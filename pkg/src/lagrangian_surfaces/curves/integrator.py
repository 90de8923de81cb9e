#!/usr/bin/env python3
# integrator.py - Fixed-step RK4 for the Legendre ODE x'' = i k x' - sign x

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from numpy.typing import NDArray

from ..constants import DEFAULT_STEP
from ..exceptions import DomainError
from ..geometry.core import AmbientQuadric, require_finite
from ..logging import get_logger

logger = get_logger('curves.integrator')

# classical RK4 Butcher tableau
RK4_A = np.array([
    [0.0, 0.0, 0.0, 0.0],
    [0.5, 0.0, 0.0, 0.0],
    [0.0, 0.5, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
])
RK4_B = np.array([1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0])
RK4_C = np.array([0.0, 0.5, 0.5, 1.0])

CurvatureFn = Callable[[NDArray[np.float64]], NDArray[np.float64]]


def make_grid(
    span: tuple[float, float], step: float = DEFAULT_STEP
) -> tuple[NDArray[np.float64], int, slice]:
    """Uniform grid of integer multiples of ``step`` covering ``span`` and 0.

    Returns the full grid from min(start, 0) to max(stop, 0), the index of the
    integration origin 0 in it, and the slice selecting the samples of ``span``.
    """
    start, stop = float(span[0]), float(span[1])
    require_finite([start, stop, step], "span/step")
    if step <= 0.0:
        raise DomainError(f"step must be positive, got {step}")
    if stop <= start:
        raise DomainError(f"span must be increasing, got ({start}, {stop})")
    i0 = int(math.ceil(start / step - 1e-9))
    i1 = int(math.floor(stop / step + 1e-9))
    if i1 <= i0:
        raise DomainError(f"span ({start}, {stop}) holds fewer than two samples at step {step}")
    lo, hi = min(i0, 0), max(i1, 0)
    grid = step * np.arange(lo, hi + 1, dtype=np.float64)
    return grid, -lo, slice(i0 - lo, i1 - lo + 1)


def _rhs(ambient: AmbientQuadric, k: float, y: NDArray[np.complex128]) -> NDArray[np.complex128]:
    pos, vel = y[:2], y[2:]
    return np.concatenate([vel, 1j * k * vel - ambient.signature * pos])


def rk4_step(
    ambient: AmbientQuadric,
    y: NDArray[np.complex128],
    h: float,
    stage_curvature: NDArray[np.float64],
) -> NDArray[np.complex128]:
    """One classical RK4 step of the first-order system in (position, velocity).

    ``stage_curvature`` holds k at the four stage abscissae x + RK4_C * h.
    """
    stages = np.zeros((4, y.shape[0]), dtype=np.complex128)
    for i in range(4):
        yi = y + h * (RK4_A[i, :i] @ stages[:i]) if i else y
        stages[i] = _rhs(ambient, float(stage_curvature[i]), yi)
    return y + h * (RK4_B @ stages)


def half_step_curvature(
    curvature: CurvatureFn, grid: NDArray[np.float64]
) -> NDArray[np.float64]:
    """k on the grid refined by its midpoints: entry 2i is grid[i], 2i+1 its midpoint."""
    n = grid.shape[0]
    h = float(grid[1] - grid[0]) if n > 1 else 0.0
    nodes = grid[0] + 0.5 * h * np.arange(2 * n - 1, dtype=np.float64)
    values = np.broadcast_to(np.asarray(curvature(nodes), dtype=np.float64), nodes.shape)
    require_finite(values, "curvature profile")
    return np.array(values)


def integrate_jets(
    ambient: AmbientQuadric,
    curvature: CurvatureFn,
    position0: NDArray[np.complex128],
    velocity0: NDArray[np.complex128],
    grid: NDArray[np.float64],
    origin: int,
) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """Integrate forward and backward from ``grid[origin]`` over a uniform grid."""
    n = grid.shape[0]
    states = np.zeros((n, 4), dtype=np.complex128)
    states[origin] = np.concatenate([position0, velocity0])
    h = float(grid[1] - grid[0]) if n > 1 else 0.0
    k_half = half_step_curvature(curvature, grid)
    offsets = np.rint(2.0 * RK4_C).astype(np.intp)
    for i in range(origin, n - 1):
        states[i + 1] = rk4_step(ambient, states[i], h, k_half[2 * i + offsets])
    for i in range(origin, 0, -1):
        states[i - 1] = rk4_step(ambient, states[i], -h, k_half[2 * i - offsets])
    logger.debug(
        "integrated %d samples on %s (h=%.3g, origin=%d)", n, ambient.short_name, h, origin
    )
    return states[:, :2], states[:, 2:]
