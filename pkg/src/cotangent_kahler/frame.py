"""Adapted frame (delta_i, d^i) on the cotangent bundle and Lie brackets.

Phase-space coordinates are stacked as ``z = (q^1..q^n, p_1..p_n)``. Adapted
components are ordered ``(delta_1..delta_n, d^1..d^n)`` where
``delta_i = d/dq^i + Gamma^0_ih d/dp_h`` and ``d^i = d/dp_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from . import fd
from .errors import InputError
from .spaceform import SpaceFormParams, christoffel_at, riemann_identity


@dataclass(frozen=True)
class PhasePoint:
    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if q.ndim != 1 or q.shape != p.shape:
            raise InputError(f"q and p must be 1-d of equal length, got {q.shape} and {p.shape}")
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(p))):
            raise InputError("phase point must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.q.size

    @property
    def z(self) -> np.ndarray:
        return np.concatenate([self.q, self.p])

    @classmethod
    def from_z(cls, z) -> PhasePoint:
        z = np.asarray(z, dtype=float)
        n = z.size // 2
        return cls(z[:n], z[n:])


class Frame(Enum):
    ADAPTED = "adapted"
    COORDINATE = "coordinate"


@dataclass(frozen=True)
class TangentVector:
    """Components of a tangent vector at a phase point, tagged with their frame."""

    components: np.ndarray
    frame: Frame

    def __post_init__(self):
        object.__setattr__(self, "components", np.asarray(self.components, dtype=float))

    def _same_frame(self, other: TangentVector):
        if not isinstance(other, TangentVector):
            raise TypeError("expected a TangentVector")
        if other.frame is not self.frame:
            raise TypeError(f"cannot combine {self.frame.value} and {other.frame.value} components")

    def __add__(self, other):
        self._same_frame(other)
        return TangentVector(self.components + other.components, self.frame)

    def __sub__(self, other):
        self._same_frame(other)
        return TangentVector(self.components - other.components, self.frame)

    def __mul__(self, scalar: float):
        return TangentVector(self.components * scalar, self.frame)

    __rmul__ = __mul__

    def __neg__(self):
        return TangentVector(-self.components, self.frame)


def adapted(components) -> TangentVector:
    return TangentVector(components, Frame.ADAPTED)


def coordinate(components) -> TangentVector:
    return TangentVector(components, Frame.COORDINATE)


@dataclass(frozen=True)
class FrameChange:
    """``B`` maps adapted components to coordinate components; ``B_inv`` the reverse."""

    B: np.ndarray
    B_inv: np.ndarray

    def to_coordinate(self, X: TangentVector) -> TangentVector:
        if X.frame is Frame.COORDINATE:
            raise TypeError("vector is already in the coordinate frame")
        return coordinate(self.B @ X.components)

    def to_adapted(self, X: TangentVector) -> TangentVector:
        if X.frame is Frame.ADAPTED:
            raise TypeError("vector is already in the adapted frame")
        return adapted(self.B_inv @ X.components)


def gamma0(pt: PhasePoint, base: SpaceFormParams) -> np.ndarray:
    """``Gamma^0_ih = p_k Gamma^k_ih`` (symmetric)."""
    return np.einsum("k,kih->ih", pt.p, christoffel_at(pt.q, base))


def _blocks(n: int, coupling: np.ndarray) -> np.ndarray:
    B = np.eye(2 * n)
    B[n:, :n] = coupling
    return B


def frame_change_at(pt: PhasePoint, base: SpaceFormParams) -> FrameChange:
    G0 = gamma0(pt, base)
    # column i of B is delta_i: unit q-part, p-part Gamma^0_ih
    return FrameChange(_blocks(pt.n, G0.T), _blocks(pt.n, -G0.T))


def adapted_frame_field(base: SpaceFormParams) -> Callable[[np.ndarray], np.ndarray]:
    """Field ``z -> B(z)``; column ``A`` holds the coordinate components of the A-th adapted basis field."""

    def field(z):
        return frame_change_at(PhasePoint.from_z(z), base).B

    return field


BRACKET_KINDS = ("vv", "vh", "hh")


def bracket_analytic(i: int, j: int, kind: str, pt: PhasePoint, base: SpaceFormParams) -> np.ndarray:
    """Adapted components of ``[d^i, d^j]`` (vv), ``[d^i, delta_j]`` (vh) or ``[delta_i, delta_j]`` (hh)."""
    n = pt.n
    out = np.zeros(2 * n)
    if kind == "vv":
        return out
    if kind == "vh":
        out[n:] = christoffel_at(pt.q, base)[i, j, :]
        return out
    if kind == "hh":
        # [delta_i, delta_j] = R^0_{kij} d^k with R^0_{kij} = p_h R^h_{kij}
        R0 = np.einsum("h,hkij->kij", pt.p, riemann_identity(pt.q, base))
        out[n:] = R0[:, i, j]
        return out
    raise ValueError(f"kind must be one of {BRACKET_KINDS}")


def bracket_fd_oracle(X: Callable, Y: Callable, z, h: float = fd.DEFAULT_STEP) -> np.ndarray:
    """``[X, Y]^k = X^l d_l Y^k - Y^l d_l X^k`` by central differences.

    ``X`` and ``Y`` map coordinates to coordinate components, either a vector
    or a matrix of column fields; for matrices the result is indexed
    ``[a, b, k]`` = component k of ``[X_a, Y_b]``.
    """
    z = np.asarray(z, dtype=float)
    Xz, Yz = np.asarray(X(z)), np.asarray(Y(z))
    dX, dY = fd.jacobian(X, z, h), fd.jacobian(Y, z, h)
    if Xz.ndim == 1:
        return dY.T @ Xz - dX.T @ Yz
    return np.einsum("la,lkb->abk", Xz, dY) - np.einsum("lb,lka->abk", Yz, dX)
