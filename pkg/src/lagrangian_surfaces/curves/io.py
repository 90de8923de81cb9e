"""CSV serialization of sampled curves."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Mapping, Optional, Union

import numpy as np
from numpy.typing import NDArray

from ..constants import SIGNIFICANT_DIGITS
from .types import LegendreCurve

CURVE_COLUMNS = (
    "param",
    "pos1_re", "pos1_im", "pos2_re", "pos2_im",
    "vel1_re", "vel1_im", "vel2_re", "vel2_im",
    "curvature", "legendre_angle",
)

FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"


def curve_table(curve: LegendreCurve) -> NDArray[np.float64]:
    """Samples in the fixed column order of ``CURVE_COLUMNS``."""
    angle = curve.legendre_angle if curve.legendre_angle is not None else np.zeros(len(curve))
    p, v = curve.position, curve.velocity
    return np.column_stack([
        curve.param,
        p[:, 0].real, p[:, 0].imag, p[:, 1].real, p[:, 1].imag,
        v[:, 0].real, v[:, 0].imag, v[:, 1].real, v[:, 1].imag,
        curve.curvature, angle,
    ])


def write_curve_csv(
    curve: LegendreCurve,
    path: Union[str, Path],
    extra_columns: Optional[Mapping[str, NDArray[np.float64]]] = None,
) -> Path:
    """Write the curve samples; extra columns are appended after the fixed ones."""
    table = curve_table(curve)
    names = list(CURVE_COLUMNS)
    for name, values in (extra_columns or {}).items():
        table = np.column_stack([table, np.asarray(values, dtype=np.float64)])
        names.append(name)
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(out, table, delimiter=",", header=",".join(names), comments="", fmt=FLOAT_FORMAT)
    return out


def read_curve_csv(path: Union[str, Path]) -> dict[str, NDArray[np.float64]]:
    """Columns of a curve CSV keyed by header name."""
    p = Path(path)
    with p.open() as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(p, delimiter=",", skiprows=1, ndmin=2)
    return {name: data[:, i] for i, name in enumerate(header)}


def curve_descriptor(curve: LegendreCurve) -> dict[str, Any]:
    """JSON-ready description from which ``curve_from_descriptor`` rebuilds the curve."""
    return {
        "family": curve.family,
        "ambient": curve.ambient.value,
        "span": [float(curve.param[0]), float(curve.param[-1])],
        "step": curve.step,
        "samples": len(curve),
        "parameters": _plain(curve.parameters),
        "columns": list(CURVE_COLUMNS),
    }


def curve_from_descriptor(descriptor: Mapping[str, Any]) -> LegendreCurve:
    """Rebuild a catalogued curve from its descriptor.

    Raises:
        ValueError: If the family is not a catalogued one
    """
    from .catalog import CurveFamily, create_curve

    try:
        family = CurveFamily(descriptor["family"])
    except ValueError:
        raise ValueError(f"Unknown curve family: {descriptor['family']}") from None
    return create_curve(
        family,
        descriptor.get("parameters", {}),
        tuple(descriptor["span"]),
        float(descriptor["step"]),
    )


def _plain(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value
