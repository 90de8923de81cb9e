"""Continuous unwrapping of angle samples on 1-D and 2-D grids."""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import UnwrapError


def unwrap_line(angles: ArrayLike) -> NDArray[np.float64]:
    """Branch with consecutive samples differing by less than pi."""
    return np.unwrap(np.asarray(angles, dtype=np.float64))


def unwrap_grid(angles: ArrayLike, tolerance: float = 1e-6) -> NDArray[np.float64]:
    """Unwrap a 2-D angle field row-then-column.

    The first column is unwrapped along axis 0, then every row along axis 1
    starting from its first-column value. The last cell is recomputed along the
    opposite path (first row, then last column); the two values must agree
    within ``tolerance``.
    """
    field = np.asarray(angles, dtype=np.float64)
    if field.ndim != 2:
        raise ValueError(f"expected a 2-D field, got shape {field.shape}")

    column = np.unwrap(field[:, 0])
    out = np.unwrap(field, axis=1)
    out += (column - out[:, 0])[:, None]

    row = np.unwrap(field[0, :])
    last_column = np.unwrap(field[:, -1] - field[0, -1] + row[-1])
    holonomy = out[-1, -1] - last_column[-1]
    if abs(holonomy) > tolerance:
        raise UnwrapError(
            f"grid unwrap is path dependent: holonomy {holonomy:.3e} between the two paths"
        )
    return out


def unit_complex_distance(theta: ArrayLike, expected: ArrayLike) -> NDArray[np.float64]:
    """|e^{i theta} - e^{i expected}|, the comparison used for angles mod 2*pi."""
    return np.abs(np.exp(1j * np.asarray(theta)) - np.exp(1j * np.asarray(expected)))
