"""Centered finite-difference stencils on uniform 2-D grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..exceptions import DomainError, OracleError

# (offset, weight) pairs; first derivatives are divided by h, second by h^2
FIRST_DERIVATIVE = {
    2: ((1, 0.5), (-1, -0.5)),
    4: ((2, -1.0 / 12.0), (1, 8.0 / 12.0), (-1, -8.0 / 12.0), (-2, 1.0 / 12.0)),
}
SECOND_DERIVATIVE = {
    2: ((1, 1.0), (0, -2.0), (-1, 1.0)),
    4: (
        (2, -1.0 / 12.0),
        (1, 16.0 / 12.0),
        (0, -30.0 / 12.0),
        (-1, 16.0 / 12.0),
        (-2, -1.0 / 12.0),
    ),
}

MIN_GRID = 5


@dataclass(frozen=True)
class StencilConfig:
    """Grid steps and accuracy order of the centered stencils."""
    h_t: float = 1e-3
    h_s: float = 1e-3
    order: int = 2

    def __post_init__(self) -> None:
        if not (self.h_t > 0.0 and self.h_s > 0.0):
            raise DomainError(f"stencil steps must be positive, got ({self.h_t}, {self.h_s})")
        if self.order not in FIRST_DERIVATIVE:
            raise DomainError(f"stencil order must be 2 or 4, got {self.order}")

    @property
    def margin(self) -> int:
        """Rows/columns lost at each edge by one centered difference."""
        return self.order // 2

    @classmethod
    def for_grid(cls, t_grid: NDArray[np.float64], s_grid: NDArray[np.float64], order: int = 2) -> "StencilConfig":
        """Steps of a uniform tensor grid."""
        steps = []
        for name, grid in (("t", t_grid), ("s", s_grid)):
            if grid.shape[0] < 2:
                raise OracleError(f"{name} grid needs at least two samples")
            diffs = np.diff(grid)
            if np.ptp(diffs) > 1e-9 * abs(diffs[0]):
                raise OracleError(f"{name} grid is not uniform")
            steps.append(float(diffs[0]))
        return cls(h_t=steps[0], h_s=steps[1], order=order)


def check_grid(values: NDArray, cfg: StencilConfig, extra_margin: int = 0) -> None:
    need = max(MIN_GRID, 2 * (cfg.margin + extra_margin) + 1)
    if values.ndim < 2 or values.shape[0] < need or values.shape[1] < need:
        raise OracleError(f"grid {values.shape[:2]} is too small; need at least {need}x{need}")


def _window(values: NDArray, offset: int, margin: int, axis: int) -> NDArray:
    n = values.shape[axis]
    index = [slice(None)] * values.ndim
    index[axis] = slice(margin + offset, n - margin + offset)
    return values[tuple(index)]


def _apply(values: NDArray, weights: tuple[tuple[int, float], ...], margin: int, axis: int) -> NDArray:
    return sum(w * _window(values, k, margin, axis) for k, w in weights)  # type: ignore[return-value]


def crop(values: NDArray, margin: int, axis: int) -> NDArray:
    return _window(values, 0, margin, axis)


def interior(values: NDArray, margin: int) -> NDArray:
    """Drop ``margin`` rows and columns at every edge."""
    return crop(crop(values, margin, 0), margin, 1)


def first_derivative(values: NDArray, h: float, axis: int, order: int) -> NDArray:
    """Centered first derivative; ``axis`` shrinks by order/2 at each end."""
    return _apply(values, FIRST_DERIVATIVE[order], order // 2, axis) / h


def second_derivative(values: NDArray, h: float, axis: int, order: int) -> NDArray:
    return _apply(values, SECOND_DERIVATIVE[order], order // 2, axis) / (h * h)
