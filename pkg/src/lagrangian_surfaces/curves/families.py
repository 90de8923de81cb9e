#!/usr/bin/env python3
# families.py - Closed-form Legendre curves: geodesics, constant curvature, horizontal circles, elliptic CMC generators

from __future__ import annotations

import cmath
import math
from enum import Enum
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from ..constants import (
    CMC_ARGUMENT_SCALE,
    CMC_HYPERBOLIC_AMPLITUDE,
    CMC_HYPERBOLIC_MODULUS,
    CMC_HYPERBOLIC_PHASE_RATIO,
    CMC_SPHERE_AMPLITUDE,
    CMC_SPHERE_MODULUS,
    CMC_SPHERE_PHASE_RATIO,
    DEFAULT_STEP,
)
from ..exceptions import DomainError
from ..geometry.core import AmbientQuadric, require_finite
from ..special.elliptic import complete_elliptic_K, jacobi_cn_sn_dn
from .integrator import make_grid
from .legendre import assemble_curve
from .types import HyperbolicIC, LegendreCurve, SphereIC

DEFAULT_SPAN = (0.0, 2.0 * math.pi)
RESONANCE_TOLERANCE = 1e-12

S3 = AmbientQuadric.SPHERE3
H31 = AmbientQuadric.ANTI_DE_SITTER3


def _samples(span: tuple[float, float], step: float) -> NDArray[np.float64]:
    grid, _, window = make_grid(span, step)
    return grid[window]


def _pair(first: NDArray[np.complex128], second: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return np.stack([first, second], axis=-1).astype(np.complex128)


def geodesic_sphere(
    psi: float, a: float, span: tuple[float, float] = DEFAULT_SPAN, step: float = DEFAULT_STEP
) -> LegendreCurve:
    """Great circle (c cos s + e^{ia} s_psi sin s, s_psi cos s - e^{ia} c sin s)."""
    SphereIC(psi, a)
    x = _samples(span, step)
    c, s, e = math.cos(psi), math.sin(psi), cmath.exp(1j * a)
    cos, sin = np.cos(x), np.sin(x)
    position = _pair(c * cos + e * s * sin, s * cos - e * c * sin)
    velocity = _pair(-c * sin + e * s * cos, -s * sin - e * c * cos)
    return assemble_curve(
        S3, x, position, velocity, np.zeros_like(x),
        family="geodesic_sphere", parameters={"psi": psi, "a": a},
    )


def geodesic_hyperbolic(
    delta: float, b: float, span: tuple[float, float] = DEFAULT_SPAN, step: float = DEFAULT_STEP
) -> LegendreCurve:
    """Geodesic (sh cosh t + e^{ib} ch sinh t, ch cosh t + e^{ib} sh sinh t)."""
    HyperbolicIC(delta, b)
    x = _samples(span, step)
    sh, ch, e = math.sinh(delta), math.cosh(delta), cmath.exp(1j * b)
    cosh, sinh = np.cosh(x), np.sinh(x)
    position = _pair(sh * cosh + e * ch * sinh, ch * cosh + e * sh * sinh)
    velocity = _pair(sh * sinh + e * ch * cosh, ch * sinh + e * sh * cosh)
    return assemble_curve(
        H31, x, position, velocity, np.zeros_like(x),
        family="geodesic_hyperbolic", parameters={"delta": delta, "b": b},
    )


def _two_mode(
    rates: tuple[complex, complex],
    p0: NDArray[np.complex128],
    v0: NDArray[np.complex128],
    x: NDArray[np.float64],
) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """e^{m1 x} A + e^{m2 x} B matching position p0 and velocity v0 at 0."""
    m1, m2 = rates
    coeff_a = (v0 - m2 * p0) / (m1 - m2)
    coeff_b = p0 - coeff_a
    e1 = np.exp(m1 * x)[:, None]
    e2 = np.exp(m2 * x)[:, None]
    position = e1 * coeff_a + e2 * coeff_b
    velocity = m1 * e1 * coeff_a + m2 * e2 * coeff_b
    return position, velocity


def constant_curvature_sphere(
    c: float, ic: SphereIC, span: tuple[float, float] = DEFAULT_SPAN, step: float = DEFAULT_STEP
) -> LegendreCurve:
    """Legendre curve in S^3 with k = c, a superposition of two circular modes."""
    require_finite([c], "c")
    x = _samples(span, step)
    root = math.sqrt(c * c + 4.0)
    rates = (1j * (c + root) / 2.0, 1j * (c - root) / 2.0)
    p0, v0 = ic.jet()
    position, velocity = _two_mode(rates, p0, v0, x)
    return assemble_curve(
        S3, x, position, velocity, np.full_like(x, c),
        family="constant_curvature_sphere", parameters={"c": c, "psi": ic.psi, "a": ic.a},
    )


class HyperbolicBranch(str, Enum):
    """Closed-form regime of the constant curvature equation in H^3_1."""
    OSCILLATORY = "oscillatory"       # |b| > 2
    EXPONENTIAL = "exponential"       # |b| < 2
    RESONANT_POSITIVE = "resonant+"   # b = 2
    RESONANT_NEGATIVE = "resonant-"   # b = -2


def hyperbolic_branch(b0: float) -> HyperbolicBranch:
    if abs(abs(b0) - 2.0) <= RESONANCE_TOLERANCE:
        return HyperbolicBranch.RESONANT_POSITIVE if b0 > 0 else HyperbolicBranch.RESONANT_NEGATIVE
    return HyperbolicBranch.OSCILLATORY if abs(b0) > 2.0 else HyperbolicBranch.EXPONENTIAL


def constant_curvature_hyperbolic(
    b0: float, ic: HyperbolicIC, span: tuple[float, float] = DEFAULT_SPAN, step: float = DEFAULT_STEP
) -> LegendreCurve:
    """Legendre curve in H^3_1 with k = b0.

    The characteristic roots of m^2 - i b0 m - 1 = 0 are
    m = (i b0 +- sqrt(4 - b0^2)) / 2: purely imaginary for |b0| > 2, with
    real parts +-sqrt(4 - b0^2)/2 for |b0| < 2, and the double root i b0 / 2
    when |b0| = 2, where the solution is e^{i b0 t / 2}(A + t B).
    """
    require_finite([b0], "b0")
    x = _samples(span, step)
    p0, v0 = ic.jet()
    branch = hyperbolic_branch(b0)
    if branch in (HyperbolicBranch.RESONANT_POSITIVE, HyperbolicBranch.RESONANT_NEGATIVE):
        rate = 1j * math.copysign(1.0, b0)
        coeff_b = v0 - rate * p0
        e = np.exp(rate * x)[:, None]
        position = e * (p0 + x[:, None] * coeff_b)
        velocity = e * (rate * p0 + coeff_b + rate * x[:, None] * coeff_b)
    else:
        if branch is HyperbolicBranch.OSCILLATORY:
            root = math.sqrt(b0 * b0 - 4.0)
            rates = (1j * (b0 + root) / 2.0, 1j * (b0 - root) / 2.0)
        else:
            root = math.sqrt(4.0 - b0 * b0)
            rates = ((1j * b0 + root) / 2.0, (1j * b0 - root) / 2.0)
        position, velocity = _two_mode(rates, p0, v0, x)
    return assemble_curve(
        H31, x, position, velocity, np.full_like(x, b0),
        family="constant_curvature_hyperbolic",
        parameters={"b0": b0, "delta": ic.delta, "b": ic.b, "branch": branch.value},
    )


def horizontal_circle_sphere(
    psi: float, span: tuple[float, float] = DEFAULT_SPAN, step: float = DEFAULT_STEP
) -> LegendreCurve:
    """(cos psi e^{i tan psi s}, sin psi e^{-i cot psi s}), curvature -2 cot 2psi."""
    require_finite([psi], "psi")
    if not 0.0 < psi < math.pi / 2:
        raise DomainError(f"psi must lie in the open interval (0, pi/2), got {psi}")
    x = _samples(span, step)
    c, s = math.cos(psi), math.sin(psi)
    f1, f2 = math.tan(psi), -1.0 / math.tan(psi)
    e1, e2 = np.exp(1j * f1 * x), np.exp(1j * f2 * x)
    position = _pair(c * e1, s * e2)
    velocity = _pair(1j * f1 * c * e1, 1j * f2 * s * e2)
    curvature = np.full_like(x, -2.0 * math.cos(2.0 * psi) / math.sin(2.0 * psi))
    return assemble_curve(
        S3, x, position, velocity, curvature,
        family="horizontal_circle_sphere", parameters={"psi": psi},
    )


def horizontal_circle_hyperbolic(
    delta: float, span: tuple[float, float] = DEFAULT_SPAN, step: float = DEFAULT_STEP
) -> LegendreCurve:
    """(sinh delta e^{i coth delta t}, cosh delta e^{i tanh delta t}), curvature 2 coth 2delta."""
    require_finite([delta], "delta")
    if delta <= 0.0:
        raise DomainError(f"delta must be positive, got {delta}")
    x = _samples(span, step)
    sh, ch = math.sinh(delta), math.cosh(delta)
    f1, f2 = ch / sh, sh / ch
    e1, e2 = np.exp(1j * f1 * x), np.exp(1j * f2 * x)
    position = _pair(sh * e1, ch * e2)
    velocity = _pair(1j * f1 * sh * e1, 1j * f2 * ch * e2)
    curvature = np.full_like(x, 2.0 * math.cosh(2.0 * delta) / math.sinh(2.0 * delta))
    return assemble_curve(
        H31, x, position, velocity, curvature,
        family="horizontal_circle_hyperbolic", parameters={"delta": delta},
    )


def horizontal_circle_period(psi: float) -> float:
    """Period of the projected horizontal circle, pi sin 2psi."""
    return math.pi * math.sin(2.0 * psi)


def is_closed_lift(psi: float, max_denominator: int = 64, tolerance: float = 1e-9) -> bool:
    """Whether the lift of the sphere horizontal circle closes: tan^2 psi rational."""
    ratio = math.tan(psi) ** 2
    approx = Fraction(ratio).limit_denominator(max_denominator)
    return abs(float(approx) - ratio) < tolerance


def _elliptic_cmc(
    ambient: AmbientQuadric,
    modulus: float,
    amplitude: float,
    ratio: float,
    span: tuple[float, float],
    step: float,
    family: str,
) -> LegendreCurve:
    sign = ambient.signature
    w = CMC_ARGUMENT_SCALE
    x = _samples(span, step)
    cn, sn, dn = (np.asarray(v) for v in jacobi_cn_sn_dn(w * x, modulus))
    d_cn = -w * sn * dn
    d_sn = w * cn * dn
    d_dn = -w * modulus**2 * sn * cn

    rotor = dn + 1j * modulus * sn
    d_rotor = d_dn + 1j * modulus * d_sn

    # modulus of the second component: sqrt(1 -+ r^2)
    q = np.sqrt(1.0 - sign * amplitude**2 * cn**2)
    d_q = -sign * amplitude**2 * cn * d_cn / q

    num = dn - 1j * ratio * sn
    d_num = d_dn - 1j * ratio * d_sn
    den = np.sqrt(dn**2 + ratio**2 * sn**2)
    d_den = (dn * d_dn + ratio**2 * sn * d_sn) / den
    phase = num / den
    d_phase = d_num / den - num * d_den / den**2

    position = _pair(amplitude * cn * rotor, rotor * q * phase)
    velocity = _pair(
        amplitude * (d_cn * rotor + cn * d_rotor),
        d_rotor * q * phase + rotor * d_q * phase + rotor * q * d_phase,
    )
    curvature = 3.0 * amplitude * cn
    return assemble_curve(
        ambient, x, position, velocity, curvature,
        family=family,
        parameters={"modulus": modulus, "amplitude": amplitude, "argument_scale": w},
    )


def cmc_profile_sphere(
    span: tuple[float, float] = (-1.0, 1.0), step: float = DEFAULT_STEP
) -> LegendreCurve:
    """Spherical generator of the rho = 3/2 elliptic CMC torus.

    r = |gamma_1| = A cn(5^{1/4} s, k) solves r'^2 + r^2 + r^4 = 1 and the
    curvature is 3 A cn, so k^2 = 9 r^2.
    """
    return _elliptic_cmc(
        S3, CMC_SPHERE_MODULUS, CMC_SPHERE_AMPLITUDE, CMC_SPHERE_PHASE_RATIO,
        span, step, "cmc_profile_sphere",
    )


def cmc_profile_hyperbolic(
    span: tuple[float, float] = (-1.0, 1.0), step: float = DEFAULT_STEP
) -> LegendreCurve:
    """Hyperbolic generator of the rho = 3/2 elliptic CMC torus; r'^2 - r^2 + r^4 = 1."""
    return _elliptic_cmc(
        H31, CMC_HYPERBOLIC_MODULUS, CMC_HYPERBOLIC_AMPLITUDE, CMC_HYPERBOLIC_PHASE_RATIO,
        span, step, "cmc_profile_hyperbolic",
    )


def cmc_period(ambient: AmbientQuadric) -> float:
    """Arclength period 4 K(k) / 5^{1/4} of the elliptic CMC generator."""
    modulus = CMC_SPHERE_MODULUS if ambient is S3 else CMC_HYPERBOLIC_MODULUS
    return 4.0 * complete_elliptic_K(modulus) / CMC_ARGUMENT_SCALE
