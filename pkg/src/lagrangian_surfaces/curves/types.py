#!/usr/bin/env python3
# types.py - Curve jets, curvature profiles, sampled Legendre curves and projections

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.interpolate import CubicSpline

from ..exceptions import DomainError
from ..geometry.core import AmbientQuadric, ComplexPair, require_finite

RealFn = Callable[[NDArray[np.float64]], NDArray[np.float64]]


def _check_angle(value: float, name: str) -> None:
    if not -math.pi < value <= math.pi:
        raise DomainError(f"{name} must lie in (-pi, pi], got {value}")


@dataclass(frozen=True)
class SphereIC:
    """gamma(0) = (cos psi, sin psi), gamma'(0) = e^{ia} (sin psi, -cos psi)."""
    psi: float
    a: float

    def __post_init__(self) -> None:
        require_finite([self.psi, self.a], "SphereIC")
        if not 0.0 <= self.psi <= math.pi / 2:
            raise DomainError(f"psi must lie in [0, pi/2], got {self.psi}")
        _check_angle(self.a, "a")

    def jet(self) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
        c, s = math.cos(self.psi), math.sin(self.psi)
        rot = complex(math.cos(self.a), math.sin(self.a))
        return (
            np.array([c, s], dtype=np.complex128),
            rot * np.array([s, -c], dtype=np.complex128),
        )


@dataclass(frozen=True)
class HyperbolicIC:
    """alpha(0) = (sinh delta, cosh delta), alpha'(0) = e^{ib} (cosh delta, sinh delta)."""
    delta: float
    b: float

    def __post_init__(self) -> None:
        require_finite([self.delta, self.b], "HyperbolicIC")
        if self.delta < 0.0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")
        _check_angle(self.b, "b")

    def jet(self) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
        sh, ch = math.sinh(self.delta), math.cosh(self.delta)
        rot = complex(math.cos(self.b), math.sin(self.b))
        return (
            np.array([sh, ch], dtype=np.complex128),
            rot * np.array([ch, sh], dtype=np.complex128),
        )


@dataclass(frozen=True)
class InitialJet:
    """Explicit initial position and velocity, used by horizontal lifts."""
    position: ComplexPair
    velocity: ComplexPair

    def jet(self) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
        return self.position.as_array(), self.velocity.as_array()


@dataclass(frozen=True)
class RadialProfile:
    """Modulus r of the first component together with r' (and optionally r'')."""
    r: RealFn
    dr: RealFn
    ddr: Optional[RealFn] = None


class ProfileKind(str, Enum):
    CONSTANT = "constant"
    LINEAR = "linear"
    TABULATED = "tabulated"
    RADIAL_DERIVED = "radial_derived"


@dataclass(frozen=True, eq=False)
class CurvatureProfile:
    """Prescribed curvature function k(x)."""
    kind: ProfileKind
    c: float = 0.0
    a: float = 0.0
    b: float = 0.0
    x: Optional[NDArray[np.float64]] = None
    k: Optional[NDArray[np.float64]] = None
    radial: Optional[RadialProfile] = None
    ambient: Optional[AmbientQuadric] = None
    _spline: Optional[CubicSpline] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind is ProfileKind.TABULATED:
            if self.x is None or self.k is None:
                raise DomainError("tabulated profile needs samples x and k")
            x = np.asarray(self.x, dtype=np.float64)
            k = np.asarray(self.k, dtype=np.float64)
            require_finite(x, "profile grid")
            require_finite(k, "profile samples")
            if x.shape != k.shape or x.ndim != 1 or x.size < 2:
                raise DomainError("tabulated profile needs matching 1-D samples")
            if np.any(np.diff(x) <= 0.0):
                raise DomainError("tabulated profile grid must be strictly increasing")
            object.__setattr__(self, "_spline", CubicSpline(x, k))
        elif self.kind is ProfileKind.RADIAL_DERIVED:
            if self.radial is None or self.ambient is None:
                raise DomainError("radial-derived profile needs an r-profile and an ambient")
        else:
            require_finite([self.c, self.a, self.b], "profile coefficients")

    @classmethod
    def constant(cls, c: float) -> "CurvatureProfile":
        return cls(ProfileKind.CONSTANT, c=float(c))

    @classmethod
    def linear(cls, a: float, b: float) -> "CurvatureProfile":
        """k(x) = a x + b."""
        return cls(ProfileKind.LINEAR, a=float(a), b=float(b))

    @classmethod
    def tabulated(cls, x: ArrayLike, k: ArrayLike) -> "CurvatureProfile":
        return cls(
            ProfileKind.TABULATED,
            x=np.asarray(x, dtype=np.float64),
            k=np.asarray(k, dtype=np.float64),
        )

    @classmethod
    def radial_derived(cls, ambient: AmbientQuadric, radial: RadialProfile) -> "CurvatureProfile":
        return cls(ProfileKind.RADIAL_DERIVED, radial=radial, ambient=ambient)

    def __call__(self, x: ArrayLike) -> NDArray[np.float64]:
        arr = np.asarray(x, dtype=np.float64)
        if self.kind is ProfileKind.CONSTANT:
            return np.full_like(arr, self.c)
        if self.kind is ProfileKind.LINEAR:
            return self.a * arr + self.b
        if self.kind is ProfileKind.TABULATED:
            assert self._spline is not None
            return np.asarray(self._spline(arr), dtype=np.float64)
        from .radial import radial_curvature

        assert self.radial is not None and self.ambient is not None
        ddr = self.radial.ddr(arr) if self.radial.ddr is not None else None
        return radial_curvature(
            self.ambient, self.radial.r(arr), self.radial.dr(arr), ddr, arr
        )

    def describe(self) -> Dict[str, Any]:
        if self.kind is ProfileKind.CONSTANT:
            return {"kind": self.kind.value, "c": self.c}
        if self.kind is ProfileKind.LINEAR:
            return {"kind": self.kind.value, "a": self.a, "b": self.b}
        if self.kind is ProfileKind.TABULATED:
            assert self.x is not None and self.k is not None
            return {"kind": self.kind.value, "x": self.x.tolist(), "k": self.k.tolist()}
        return {"kind": self.kind.value}


@dataclass(frozen=True)
class CurveJet:
    """Position and velocity of a Legendre curve at one arclength sample."""
    param: float
    position: ComplexPair
    velocity: ComplexPair
    ambient: AmbientQuadric


@dataclass(frozen=True)
class CurveDefects:
    """Worst-case violations of the jet invariants along a curve."""
    quadric: float
    speed: float
    tangency: float
    legendre: float

    @property
    def worst(self) -> float:
        return max(self.quadric, self.speed, self.tangency, self.legendre)

    def as_dict(self) -> Dict[str, float]:
        return {
            "quadric": self.quadric,
            "speed": self.speed,
            "tangency": self.tangency,
            "legendre": self.legendre,
        }


@dataclass(frozen=True, eq=False)
class LegendreCurve:
    """Sampled unit-speed Legendre curve on S^3 or H^3_1.

    ``position`` and ``velocity`` have shape (n, 2); ``legendre_angle`` is the
    continuously unwrapped argument of det(position, velocity).
    """
    ambient: AmbientQuadric
    param: NDArray[np.float64]
    position: NDArray[np.complex128]
    velocity: NDArray[np.complex128]
    curvature: NDArray[np.float64]
    legendre_angle: Optional[NDArray[np.float64]] = None
    family: str = "custom"
    parameters: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = self.param.shape[0]
        if n == 0:
            raise DomainError("a curve needs at least one sample")
        if self.position.shape != (n, 2) or self.velocity.shape != (n, 2):
            raise DomainError("position and velocity must have shape (n, 2)")
        if self.curvature.shape != (n,):
            raise DomainError("curvature must have one sample per parameter value")
        if n > 1 and np.any(np.diff(self.param) <= 0.0):
            raise DomainError("curve grid must be strictly increasing")

    def __len__(self) -> int:
        return int(self.param.shape[0])

    @property
    def step(self) -> float:
        return float(self.param[1] - self.param[0]) if len(self) > 1 else 0.0

    @property
    def length(self) -> float:
        """Arclength covered by the grid."""
        return float(self.param[-1] - self.param[0])

    @property
    def acceleration(self) -> NDArray[np.complex128]:
        """Second derivative from the Legendre ODE x'' = i k x' - sign x."""
        return (
            1j * self.curvature[:, None] * self.velocity
            - self.ambient.signature * self.position
        )

    @property
    def modulus1(self) -> NDArray[np.float64]:
        """|x_1| along the curve."""
        return np.abs(self.position[:, 0])

    def subsample(self, stride: int) -> "LegendreCurve":
        """Every ``stride``-th sample; the grid stays uniform."""
        if stride < 1:
            raise DomainError(f"stride must be >= 1, got {stride}")
        angle = None if self.legendre_angle is None else self.legendre_angle[::stride]
        return LegendreCurve(
            ambient=self.ambient,
            param=self.param[::stride],
            position=self.position[::stride],
            velocity=self.velocity[::stride],
            curvature=self.curvature[::stride],
            legendre_angle=angle,
            family=self.family,
            parameters=dict(self.parameters),
        )

    def restrict(self, lo: float, hi: float) -> "LegendreCurve":
        """Samples with lo <= param <= hi."""
        keep = (self.param >= lo) & (self.param <= hi)
        if not np.any(keep):
            raise DomainError(f"no samples of the curve lie in [{lo}, {hi}]")
        angle = None if self.legendre_angle is None else self.legendre_angle[keep]
        return LegendreCurve(
            ambient=self.ambient,
            param=self.param[keep],
            position=self.position[keep],
            velocity=self.velocity[keep],
            curvature=self.curvature[keep],
            legendre_angle=angle,
            family=self.family,
            parameters=dict(self.parameters),
        )

    def jet(self, index: int) -> CurveJet:
        return CurveJet(
            param=float(self.param[index]),
            position=ComplexPair.from_array(self.position[index]),
            velocity=ComplexPair.from_array(self.velocity[index]),
            ambient=self.ambient,
        )

    def jets(self) -> list[CurveJet]:
        return [self.jet(i) for i in range(len(self))]


class ProjectionTarget(str, Enum):
    SPHERE_PATCH = "SpherePatch"
    HYPERBOLIC_SHEET = "HyperbolicSheet"

    @property
    def ambient(self) -> AmbientQuadric:
        if self is ProjectionTarget.SPHERE_PATCH:
            return AmbientQuadric.SPHERE3
        return AmbientQuadric.ANTI_DE_SITTER3

    @classmethod
    def for_ambient(cls, ambient: AmbientQuadric) -> "ProjectionTarget":
        if ambient is AmbientQuadric.SPHERE3:
            return cls.SPHERE_PATCH
        return cls.HYPERBOLIC_SHEET


@dataclass(frozen=True, eq=False)
class ProjectedCurve:
    """Image of a Legendre curve in S^2(1/2) or H^2(-1/2).

    ``velocity`` and ``acceleration`` are optional; when absent they are
    estimated from ``points`` by finite differences.
    """
    target: ProjectionTarget
    param: NDArray[np.float64]
    points: NDArray[np.float64]
    velocity: Optional[NDArray[np.float64]] = None
    acceleration: Optional[NDArray[np.float64]] = None

    def __post_init__(self) -> None:
        require_finite(self.points, "projected points")
        if self.points.shape != (self.param.shape[0], 3):
            raise DomainError("projected points must have shape (n, 3)")

    def derivatives(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        vel = self.velocity
        if vel is None:
            vel = np.gradient(self.points, self.param, axis=0, edge_order=2)
        acc = self.acceleration
        if acc is None:
            acc = np.gradient(vel, self.param, axis=0, edge_order=2)
        return vel, acc

    def quadric_residual(self) -> NDArray[np.float64]:
        x1, x2, x3 = self.points.T
        if self.target is ProjectionTarget.SPHERE_PATCH:
            return x1**2 + x2**2 + x3**2 - 0.25
        return x1**2 + x2**2 - x3**2 + 0.25
