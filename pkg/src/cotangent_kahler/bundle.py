"""Lifted metric G and almost complex structure J at a phase point."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, InadmissibleProfileError
from .frame import Frame, FrameChange, PhasePoint, TangentVector, frame_change_at
from .profile import LiftProfile
from .spaceform import SpaceFormParams, metric_at


@dataclass(frozen=True)
class AdaptedBlocks:
    Gb: np.ndarray
    Hb: np.ndarray
    t: float
    g0: np.ndarray

    def metric(self) -> np.ndarray:
        """2n x 2n matrix of G in the adapted frame: ``diag(Gb, Hb)``."""
        n = self.Gb.shape[0]
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = self.Gb
        out[n:, n:] = self.Hb
        return out

    def complex_structure(self) -> np.ndarray:
        """Matrix of J in the adapted frame: ``[[0, -Hb], [Gb, 0]]``."""
        n = self.Gb.shape[0]
        out = np.zeros((2 * n, 2 * n))
        out[:n, n:] = -self.Hb
        out[n:, :n] = self.Gb
        return out


@dataclass(frozen=True)
class FullMetric:
    M: np.ndarray
    frame_change: FrameChange


def energy_density(pt: PhasePoint, base: SpaceFormParams) -> float:
    _, g_inv = metric_at(pt.q, base)
    return 0.5 * float(pt.p @ g_inv @ pt.p)


def lift_blocks(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> AdaptedBlocks:
    g, g_inv = metric_at(pt.q, base)
    g0 = g_inv @ pt.p
    t = 0.5 * float(pt.p @ g0)
    vals = profile.values(t)
    Gb = vals.u * g + vals.v * np.outer(pt.p, pt.p)
    Hb = g_inv / vals.u + vals.w * np.outer(g0, g0)
    _require_positive_definite(Gb)
    return AdaptedBlocks(Gb, Hb, t, g0)


def _require_positive_definite(a: np.ndarray):
    try:
        np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise InadmissibleProfileError("lifted block is not positive definite") from exc


def metric_full(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> FullMetric:
    """G in the coordinate frame (d/dq, d/dp): ``B^-T diag(Gb, Hb) B^-1``."""
    blocks = lift_blocks(pt, base, profile)
    fc = frame_change_at(pt, base)
    return FullMetric(fc.B_inv.T @ blocks.metric() @ fc.B_inv, fc)


def j_coordinate(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> np.ndarray:
    blocks = lift_blocks(pt, base, profile)
    fc = frame_change_at(pt, base)
    return fc.B @ blocks.complex_structure() @ fc.B_inv


def j_apply(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, X: TangentVector) -> TangentVector:
    if X.frame is Frame.ADAPTED:
        J = lift_blocks(pt, base, profile).complex_structure()
    else:
        J = j_coordinate(pt, base, profile)
    return TangentVector(J @ X.components, X.frame)


def canonical_symplectic(n: int) -> np.ndarray:
    """Matrix of ``dp_i ^ dq^i`` in (q, p) coordinates; the same matrix in the adapted frame."""
    out = np.zeros((2 * n, 2 * n))
    out[n:, :n] = np.eye(n)
    out[:n, n:] = -np.eye(n)
    return out


def fundamental_form(
    pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, X: TangentVector, Y: TangentVector, rtol: float = 1e-8
) -> float:
    """``phi(X, Y) = G(X, JY)``, cross-checked against the canonical symplectic pairing."""
    X._same_frame(Y)
    if X.frame is Frame.ADAPTED:
        blocks = lift_blocks(pt, base, profile)
        value = X.components @ blocks.metric() @ blocks.complex_structure() @ Y.components
    else:
        full = metric_full(pt, base, profile)
        value = X.components @ full.M @ j_coordinate(pt, base, profile) @ Y.components
    canon = X.components @ canonical_symplectic(pt.n) @ Y.components
    scale = max(1.0, np.linalg.norm(X.components) * np.linalg.norm(Y.components))
    if abs(value - canon) > rtol * scale:
        raise GeometryError(f"G(X, JY) = {value!r} differs from the canonical pairing {canon!r}")
    return float(value)


def radial_coefficients(g: np.ndarray, g_inv: np.ndarray, p: np.ndarray, T: np.ndarray) -> tuple[float, float]:
    """Recover (a, b) with ``T = a g + b p p^T`` by transvecting with g^{-1} and g0 g0.

    The 2x2 system has determinant ``4 t^2 (n - 1)`` so it is solvable whenever
    n > 1 and p != 0; in particular ``T = 0`` forces ``a = b = 0``.
    """
    n = g.shape[0]
    g0 = g_inv @ p
    two_t = float(p @ g0)
    lhs = np.array([[n, two_t], [two_t, two_t**2]])
    rhs = np.array([np.sum(g_inv * T), g0 @ T @ g0])
    a, b = np.linalg.solve(lhs, rhs)
    return float(a), float(b)
