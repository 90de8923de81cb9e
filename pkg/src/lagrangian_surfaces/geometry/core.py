#!/usr/bin/env python3
# core.py - C^2 with its Hermitian product, Kähler form and the two quadrics

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import NonFiniteInputError

ComplexArray = NDArray[np.complex128]
RealArray = NDArray[np.float64]


class AmbientQuadric(str, Enum):
    """Quadric of C^2 carrying a Legendre curve."""
    SPHERE3 = "Sphere3"
    ANTI_DE_SITTER3 = "AntiDeSitter3"

    @property
    def signature(self) -> float:
        """Sign of |z2|^2 in the defining form; also the quadric constant."""
        return 1.0 if self is AmbientQuadric.SPHERE3 else -1.0

    @property
    def short_name(self) -> str:
        return "S3" if self is AmbientQuadric.SPHERE3 else "H31"


@dataclass(frozen=True)
class ComplexPair:
    """A point or tangent vector (z1, z2) of C^2."""
    z1: complex
    z2: complex

    def __post_init__(self) -> None:
        require_finite(np.array([self.z1, self.z2], dtype=np.complex128), "ComplexPair")

    def as_array(self) -> ComplexArray:
        return np.array([self.z1, self.z2], dtype=np.complex128)

    @classmethod
    def from_array(cls, values: ArrayLike) -> "ComplexPair":
        arr = np.asarray(values, dtype=np.complex128)
        if arr.shape != (2,):
            raise ValueError(f"expected shape (2,), got {arr.shape}")
        return cls(complex(arr[0]), complex(arr[1]))


PairLike = Union[ComplexPair, ArrayLike, Sequence[complex]]


def require_finite(values: ArrayLike, name: str = "input") -> None:
    """Reject NaN/Inf at a module boundary."""
    arr = np.asarray(values)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInputError(f"{name} contains NaN or Inf")


def as_pairs(value: PairLike, name: str = "pair") -> ComplexArray:
    """Coerce to a complex array whose last axis holds (z1, z2)."""
    if isinstance(value, ComplexPair):
        return value.as_array()
    arr = np.asarray(value, dtype=np.complex128)
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise ValueError(f"{name}: last axis must have length 2, got shape {arr.shape}")
    require_finite(arr, name)
    return arr


def _scalar_or_array(value: ArrayLike) -> Union[complex, float, NDArray]:
    value = np.asarray(value)
    if value.ndim == 0:
        return value.item()  # type: ignore[no-any-return]
    return value


def hermitian_product(a: PairLike, b: PairLike) -> Union[complex, ComplexArray]:
    """(a, b) = a1 conj(b1) + a2 conj(b2).

    The real part is the Euclidean metric and minus the imaginary part is the
    Kähler form.
    """
    x, y = as_pairs(a, "a"), as_pairs(b, "b")
    return _scalar_or_array(np.sum(x * np.conj(y), axis=-1))  # type: ignore[return-value]


def signed_hermitian(
    a: PairLike, b: PairLike, ambient: AmbientQuadric
) -> Union[complex, ComplexArray]:
    """Hermitian form of signature (+, sign) adapted to the quadric."""
    x, y = as_pairs(a, "a"), as_pairs(b, "b")
    value = x[..., 0] * np.conj(y[..., 0]) + ambient.signature * x[..., 1] * np.conj(y[..., 1])
    return _scalar_or_array(value)  # type: ignore[return-value]


def euclidean_inner(a: PairLike, b: PairLike) -> Union[float, RealArray]:
    return _scalar_or_array(np.real(hermitian_product(a, b)))  # type: ignore[return-value]


def kahler_form(a: PairLike, b: PairLike) -> Union[float, RealArray]:
    """omega(a, b) = -Im (a, b) = <Ja, b>."""
    return _scalar_or_array(-np.imag(hermitian_product(a, b)))  # type: ignore[return-value]


def multiply_by_i(a: PairLike) -> Union[ComplexPair, ComplexArray]:
    """Complex structure J of C^2."""
    if isinstance(a, ComplexPair):
        return ComplexPair(1j * a.z1, 1j * a.z2)
    return 1j * as_pairs(a, "a")


def quadric_residual(p: PairLike, q: AmbientQuadric) -> Union[float, RealArray]:
    """|z1|^2 +- |z2|^2 minus the quadric constant; zero on the quadric."""
    x = as_pairs(p, "p")
    value = np.abs(x[..., 0]) ** 2 + q.signature * np.abs(x[..., 1]) ** 2 - q.signature
    return _scalar_or_array(value)  # type: ignore[return-value]


def det_c(a: PairLike, b: PairLike) -> Union[complex, ComplexArray]:
    """Complex determinant a1 b2 - a2 b1."""
    x, y = as_pairs(a, "a"), as_pairs(b, "b")
    return _scalar_or_array(x[..., 0] * y[..., 1] - x[..., 1] * y[..., 0])  # type: ignore[return-value]


def plane_rotation_inner(u: ArrayLike, v: ArrayLike) -> RealArray:
    """<u, Jv> on C identified with R^2, i.e. Im(u conj(v))."""
    return np.imag(np.asarray(u) * np.conj(np.asarray(v)))


def plane_inner(u: ArrayLike, v: ArrayLike) -> RealArray:
    """<u, v> on C identified with R^2, i.e. Re(u conj(v))."""
    return np.real(np.asarray(u) * np.conj(np.asarray(v)))


__all__ = [
    "AmbientQuadric", "ComplexPair", "PairLike", "ComplexArray", "RealArray",
    "require_finite", "as_pairs", "hermitian_product", "signed_hermitian",
    "euclidean_inner", "kahler_form", "multiply_by_i", "quadric_residual", "det_c",
    "plane_rotation_inner", "plane_inner",
]
