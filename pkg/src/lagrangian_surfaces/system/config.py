#!/usr/bin/env python3
# config.py - Job configuration schema and loader

import math
import os
import re
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..constants import DEFAULT_STEP, EPS_ODE, VERDICT_THRESHOLD
from ..exceptions import ConfigurationError

_ENV_PATTERN = re.compile(r"\$\{([^}]+)\}")
_GRID_PATTERN = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")

DEFAULT_SPAN = (0.0, 2.0 * math.pi)
CMC_SPAN = (-1.0, 1.0)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# --- Curvature profiles -------------------------------------------

class ConstantProfileConfig(_Strict):
    kind: Literal["constant"]
    c: float


class LinearProfileConfig(_Strict):
    kind: Literal["linear"]
    a: float
    b: float


class TabulatedProfileConfig(_Strict):
    kind: Literal["tabulated"]
    x: List[float]
    k: List[float]

    @model_validator(mode="after")
    def _check_samples(self) -> "TabulatedProfileConfig":
        if len(self.x) != len(self.k) or len(self.x) < 2:
            raise ValueError("tabulated profile needs matching x and k with at least two samples")
        return self


class RadialSamplesConfig(_Strict):
    """Samples of r = |x_1|, and of r' when not taken from the spline of r."""
    x: List[float]
    r: List[float]
    dr: Optional[List[float]] = None

    @model_validator(mode="after")
    def _check_samples(self) -> "RadialSamplesConfig":
        if len(self.x) != len(self.r) or len(self.x) < 2:
            raise ValueError("radial samples need matching x and r with at least two samples")
        if self.dr is not None and len(self.dr) != len(self.x):
            raise ValueError("radial samples need one dr per x")
        if any(b <= a for a, b in zip(self.x, self.x[1:])):
            raise ValueError("radial sample grid must be strictly increasing")
        if min(self.r) <= 0.0:
            raise ValueError("radial samples need r > 0")
        return self


class RadialDerivedProfileConfig(RadialSamplesConfig):
    kind: Literal["radial_derived"]


ProfileConfig = Annotated[
    Union[ConstantProfileConfig, LinearProfileConfig, TabulatedProfileConfig, RadialDerivedProfileConfig],
    Field(discriminator="kind"),
]


# --- Curve specs --------------------------------------------------

class _CurveSpecBase(_Strict):
    span: Tuple[float, float] = DEFAULT_SPAN
    step: float = Field(default=DEFAULT_STEP, gt=0.0)

    @field_validator("span")
    @classmethod
    def _check_span(cls, v: Tuple[float, float]) -> Tuple[float, float]:
        if not v[1] > v[0]:
            raise ValueError(f"span must be increasing, got {v}")
        return v

    def params(self) -> Dict[str, Any]:
        """Family parameters in the form taken by ``create_curve``."""
        return self.model_dump(exclude={"family", "span", "step"})

    def build(self) -> Any:
        from ..curves.catalog import CurveFamily, create_curve

        family = getattr(self, "family")
        return create_curve(CurveFamily(family), self.params(), self.span, self.step)

    @property
    def on_sphere(self) -> bool:
        return str(getattr(self, "family")).endswith("_sphere")


class GeodesicSphereSpec(_CurveSpecBase):
    family: Literal["geodesic_sphere"]
    psi: float = 0.0
    a: float = math.pi


class GeodesicHyperbolicSpec(_CurveSpecBase):
    family: Literal["geodesic_hyperbolic"]
    delta: float = 0.0
    b: float = 0.0


class ConstantCurvatureSphereSpec(_CurveSpecBase):
    family: Literal["constant_curvature_sphere"]
    c: float
    psi: float = 0.0
    a: float = math.pi


class ConstantCurvatureHyperbolicSpec(_CurveSpecBase):
    family: Literal["constant_curvature_hyperbolic"]
    b0: float
    delta: float = 0.0
    b: float = 0.0


class HorizontalCircleSphereSpec(_CurveSpecBase):
    family: Literal["horizontal_circle_sphere"]
    psi: float = Field(gt=0.0, lt=math.pi / 2)


class HorizontalCircleHyperbolicSpec(_CurveSpecBase):
    family: Literal["horizontal_circle_hyperbolic"]
    delta: float = Field(gt=0.0)


class CmcProfileSphereSpec(_CurveSpecBase):
    family: Literal["cmc_profile_sphere"]
    span: Tuple[float, float] = CMC_SPAN


class CmcProfileHyperbolicSpec(_CurveSpecBase):
    family: Literal["cmc_profile_hyperbolic"]
    span: Tuple[float, float] = CMC_SPAN


class IntegratedSphereSpec(_CurveSpecBase):
    family: Literal["integrated_sphere"]
    profile: ProfileConfig
    psi: float = 0.0
    a: float = math.pi


class IntegratedHyperbolicSpec(_CurveSpecBase):
    family: Literal["integrated_hyperbolic"]
    profile: ProfileConfig
    delta: float = 0.0
    b: float = 0.0


class RadialSphereSpec(_CurveSpecBase):
    family: Literal["radial_sphere"]
    radial: RadialSamplesConfig


class RadialHyperbolicSpec(_CurveSpecBase):
    family: Literal["radial_hyperbolic"]
    radial: RadialSamplesConfig


SourceCurveSpec = Annotated[
    Union[
        GeodesicSphereSpec,
        GeodesicHyperbolicSpec,
        ConstantCurvatureSphereSpec,
        ConstantCurvatureHyperbolicSpec,
        HorizontalCircleSphereSpec,
        HorizontalCircleHyperbolicSpec,
        CmcProfileSphereSpec,
        CmcProfileHyperbolicSpec,
        IntegratedSphereSpec,
        IntegratedHyperbolicSpec,
        RadialSphereSpec,
        RadialHyperbolicSpec,
    ],
    Field(discriminator="family"),
]


class _HopfLiftSpec(_Strict):
    """Horizontal lift of the Hopf image of ``source``, sampled on the source's span and step."""
    source: SourceCurveSpec
    phase: float = 0.0

    @property
    def span(self) -> Tuple[float, float]:
        return self.source.span

    @property
    def step(self) -> float:
        return self.source.step

    def params(self) -> Dict[str, Any]:
        return {
            "source": self.source.model_dump(exclude={"span", "step"}),
            "phase": self.phase,
        }

    def build(self) -> Any:
        from ..curves.catalog import CurveFamily, create_curve

        family = getattr(self, "family")
        return create_curve(CurveFamily(family), self.params(), self.span, self.step)

    @property
    def on_sphere(self) -> bool:
        return str(getattr(self, "family")).endswith("_sphere")

    @model_validator(mode="after")
    def _check_source(self) -> "_HopfLiftSpec":
        if self.source.on_sphere != self.on_sphere:
            raise ValueError(f"{getattr(self, 'family')} needs a source curve in the same quadric")
        return self


class HopfLiftSphereSpec(_HopfLiftSpec):
    family: Literal["hopf_lift_sphere"]


class HopfLiftHyperbolicSpec(_HopfLiftSpec):
    family: Literal["hopf_lift_hyperbolic"]


CurveSpec = Annotated[
    Union[
        GeodesicSphereSpec,
        GeodesicHyperbolicSpec,
        ConstantCurvatureSphereSpec,
        ConstantCurvatureHyperbolicSpec,
        HorizontalCircleSphereSpec,
        HorizontalCircleHyperbolicSpec,
        CmcProfileSphereSpec,
        CmcProfileHyperbolicSpec,
        IntegratedSphereSpec,
        IntegratedHyperbolicSpec,
        RadialSphereSpec,
        RadialHyperbolicSpec,
        HopfLiftSphereSpec,
        HopfLiftHyperbolicSpec,
    ],
    Field(discriminator="family"),
]


# --- Sub Schemas -------------------------------------------------

class MetaConfig(_Strict):
    name: str = Field(default="lagrangian-surfaces-job")
    version: int = Field(default=1)


class LoggingConfig(_Strict):
    level: str = Field(default="WARNING")
    show_time: bool = False
    show_level: bool = True
    forward_events: bool = False

    @field_validator("level")
    @classmethod
    def _check_level(cls, v: str) -> str:
        if v.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level '{v}'")
        return v.upper()


class SurfaceCurvesConfig(_Strict):
    sphere: CurveSpec
    hyperbolic: CurveSpec

    @model_validator(mode="after")
    def _check_ambients(self) -> "SurfaceCurvesConfig":
        if not self.sphere.on_sphere:
            raise ValueError(f"curves.sphere must be a Sphere3 family, got '{self.sphere.family}'")
        if self.hyperbolic.on_sphere:
            raise ValueError(
                f"curves.hyperbolic must be an AntiDeSitter3 family, got '{self.hyperbolic.family}'"
            )
        return self


class GridConfig(_Strict):
    """Mesh resolution; curves are subsampled to at most nt x ns samples."""
    nt: int = Field(default=101, ge=5)
    ns: int = Field(default=101, ge=5)


class VerificationConfig(_Strict):
    oracle: bool = True
    stencil_order: Literal[2, 4] = 2
    draws: int = Field(default=50, ge=1)
    negative_controls: bool = False


class ExportConfig(_Strict):
    csv: bool = True
    json_report: bool = True
    obj: bool = True


class ToleranceConfig(_Strict):
    """``gate`` bounds exact residuals; finite-difference residuals get discretization_constant * h^2 on top."""
    gate: float = Field(default=VERDICT_THRESHOLD, gt=0.0)
    discretization_constant: float = Field(default=50.0, gt=0.0)

    def discretization_gate(self, h: float) -> float:
        return self.discretization_constant * h * h + 10.0 * EPS_ODE


# --- Root --------------------------------------------------------

class JobConfig(_Strict):
    meta: MetaConfig = Field(default_factory=MetaConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    curve: Optional[CurveSpec] = None
    curves: Optional[SurfaceCurvesConfig] = None
    grid: GridConfig = Field(default_factory=GridConfig)
    verification: VerificationConfig = Field(default_factory=VerificationConfig)
    export: ExportConfig = Field(default_factory=ExportConfig)
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    seed: int = Field(default=0, ge=0)


# --- Loader ------------------------------------------------------

def _replace_env(s: str) -> str:
    def repl(m: re.Match[str]) -> str:
        var = m.group(1)
        return os.getenv(var, f"${{{var}}}")
    return _ENV_PATTERN.sub(repl, s)


def _walk_replace(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _walk_replace(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_walk_replace(x) for x in obj]
    if isinstance(obj, str):
        return _replace_env(obj)
    return obj


def parse_job_config(raw: Dict[str, Any]) -> JobConfig:
    """Validate an already-parsed mapping.

    Raises:
        ConfigurationError: schema violation (unknown key, unknown family, bad value)
    """
    if not isinstance(raw, dict):
        raise ConfigurationError(f"job config must be a mapping, got {type(raw).__name__}")
    try:
        return JobConfig(**_walk_replace(raw))
    except ValidationError as e:
        raise ConfigurationError(f"invalid job config: {e}") from e


def load_job_config(path: Union[str, Path]) -> JobConfig:
    """Read a JSON or YAML job file; JSON parses as YAML."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(str(path))
    try:
        raw = yaml.safe_load(p.read_text()) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"cannot parse {path}: {e}") from e
    return parse_job_config(raw)


def parse_grid(text: str) -> GridConfig:
    """'NTxNS' as given on the command line."""
    m = _GRID_PATTERN.match(text)
    if not m:
        raise ConfigurationError(f"grid must look like 201x201, got '{text}'")
    try:
        return GridConfig(nt=int(m.group(1)), ns=int(m.group(2)))
    except ValidationError as e:
        raise ConfigurationError(f"invalid grid '{text}': {e}") from e


__all__ = [
    "JobConfig", "CurveSpec", "SurfaceCurvesConfig", "GridConfig", "VerificationConfig",
    "ExportConfig", "ToleranceConfig", "LoggingConfig", "MetaConfig",
    "load_job_config", "parse_job_config", "parse_grid",
]
