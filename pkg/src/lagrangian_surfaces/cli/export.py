"""OBJ, CSV and JSON writers for surfaces and reports.

OBJ layout: one ``v Re(phi1) Im(phi1) Re(phi2)`` line per grid vertex in
row-major (t, s) order, each followed by a ``#w Im(phi2)`` comment carrying the
fourth real coordinate, then one quad ``f`` line per grid cell (1-based). The
sidecar CSV repeats all four coordinates with the grid parameters.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Union

import numpy as np

from ..constants import SIGNIFICANT_DIGITS
from ..curves.io import FLOAT_FORMAT
from ..surface.grid import SurfaceGrid

SURFACE_COLUMNS = (
    "t", "s",
    "phi1_re", "phi1_im", "phi2_re", "phi2_im",
    "conformal_factor", "lagrangian_angle", "mean_curvature_norm",
)


def _fmt(value: float) -> str:
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def write_obj(surface: SurfaceGrid, path: Union[str, Path]) -> Path:
    nt, ns = surface.shape
    phi = surface.position
    lines = [
        "# lagrangian surface in C^2",
        "# v = (Re phi1, Im phi1, Re phi2); #w = Im phi2 of the preceding vertex",
        f"# grid {nt} x {ns}, row-major in (t, s)",
    ]
    for i in range(nt):
        for j in range(ns):
            z1, z2 = phi[i, j]
            lines.append(f"v {_fmt(z1.real)} {_fmt(z1.imag)} {_fmt(z2.real)}")
            lines.append(f"#w {_fmt(z2.imag)}")
    for i in range(nt - 1):
        for j in range(ns - 1):
            a = i * ns + j + 1
            lines.append(f"f {a} {a + ns} {a + ns + 1} {a + 1}")
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n")
    return out


def read_obj_vertices(path: Union[str, Path]) -> np.ndarray:
    """Vertices of an exported OBJ as (n, 4) real rows, Im(phi2) restored from ``#w``."""
    rows: list[list[float]] = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("v "):
            rows.append([float(v) for v in line.split()[1:4]])
        elif line.startswith("#w ") and rows:
            rows[-1].append(float(line.split()[1]))
    return np.asarray(rows, dtype=np.float64)


def surface_table(surface: SurfaceGrid) -> np.ndarray:
    nt, ns = surface.shape
    t, s = np.meshgrid(surface.t_grid, surface.s_grid, indexing="ij")
    phi = surface.position
    beta = surface.lagrangian_angle if surface.lagrangian_angle is not None else np.zeros((nt, ns))
    h_norm = (
        np.linalg.norm(surface.mean_curvature, axis=-1)
        if surface.mean_curvature is not None
        else np.zeros((nt, ns))
    )
    columns = [
        t, s,
        phi[..., 0].real, phi[..., 0].imag, phi[..., 1].real, phi[..., 1].imag,
        surface.conformal_factor, beta, h_norm,
    ]
    return np.column_stack([c.reshape(-1) for c in columns])


def write_surface_csv(surface: SurfaceGrid, path: Union[str, Path]) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        out, surface_table(surface), delimiter=",",
        header=",".join(SURFACE_COLUMNS), comments="", fmt=FLOAT_FORMAT,
    )
    return out


def round_floats(value: Any) -> Any:
    """Round every float to the report precision; non-finite floats become strings."""
    if isinstance(value, dict):
        return {str(k): round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v) for v in value]
    if isinstance(value, np.ndarray):
        return round_floats(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return str(x)
        return float(_fmt(x))
    return value


def write_json(payload: Any, path: Union[str, Path]) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(round_floats(payload), indent=2) + "\n")
    return out
