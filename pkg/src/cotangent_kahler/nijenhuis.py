"""Nijenhuis tensor of the lifted J: closed-form components and a bracket oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fd
from .bundle import j_coordinate, lift_blocks
from .errors import InputError
from .frame import PhasePoint, adapted_frame_field, bracket_fd_oracle, frame_change_at
from .profile import LiftProfile
from .spaceform import SpaceFormParams, metric_at, riemann_identity

ANALYTIC_TOL = 1e-9


@dataclass(frozen=True)
class NijenhuisEval:
    """Adapted components, each indexed ``[i, j, k]``.

    ``Ndd``: ``N(delta_i, delta_j)`` on ``d^k``; ``Ndp``: ``N(delta_i, d^j)`` on
    ``delta_k``; ``Npp``: ``N(d^i, d^j)`` on ``d^k``.
    """

    Ndd: np.ndarray
    Ndp: np.ndarray
    Npp: np.ndarray

    @property
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(a)) for a in (self.Ndd, self.Ndp, self.Npp)))


def nijenhuis_analytic(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> NijenhuisEval:
    g, _ = metric_at(pt.q, base)
    blocks = lift_blocks(pt, base, profile)
    H, p = blocks.Hb, pt.p
    F = profile.integrability_scalar(blocks.t)
    R0 = np.einsum("h,hkij->kij", p, riemann_identity(pt.q, base))
    # T[k, i, j] = {F (delta^h_i g_jk - delta^h_j g_ik) - R^h_kij} p_h
    T = F * (np.einsum("i,jk->kij", p, g) - np.einsum("j,ik->kij", p, g)) - R0
    Ndd = np.einsum("kij->ijk", T)
    Ndp = np.einsum("kl,jr,lir->ijk", H, H, T)
    Npp = np.einsum("ir,jl,klr->ijk", H, H, T)
    return NijenhuisEval(Ndd, Ndp, Npp)


def nijenhuis_oracle_table(
    pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = fd.DEFAULT_STEP
) -> np.ndarray:
    """``N(E_a, E_b)`` for all adapted basis fields, from ``[JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]``.

    Result ``[a, b, :]`` holds adapted components. The basis fields are genuine
    fields (the horizontal ones move with Gamma^0), and J is re-evaluated at
    every stencil point.
    """
    E = adapted_frame_field(base)

    def JE(z):
        q = PhasePoint.from_z(z)
        return j_coordinate(q, base, profile) @ E(z)

    z = pt.z
    J = j_coordinate(pt, base, profile)
    N = (
        bracket_fd_oracle(JE, JE, z, h)
        - np.einsum("kl,abl->abk", J, bracket_fd_oracle(JE, E, z, h))
        - np.einsum("kl,abl->abk", J, bracket_fd_oracle(E, JE, z, h))
        - bracket_fd_oracle(E, E, z, h)
    )
    B_inv = frame_change_at(pt, base).B_inv
    return np.einsum("kl,abl->abk", B_inv, N)


def nijenhuis_oracle(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = fd.DEFAULT_STEP) -> NijenhuisEval:
    """Oracle values rearranged into the same layout as :func:`nijenhuis_analytic`."""
    n = pt.n
    tab = nijenhuis_oracle_table(pt, base, profile, h)
    return NijenhuisEval(tab[:n, :n, n:], tab[:n, n:, :n], tab[n:, n:, n:])


def nijenhuis_oracle_fields(X, Y, pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = fd.DEFAULT_STEP):
    """Coordinate components of N(X, Y) for arbitrary coordinate vector fields X, Y."""

    def J_of(F):
        return lambda z: j_coordinate(PhasePoint.from_z(z), base, profile) @ F(z)

    z = pt.z
    J = j_coordinate(pt, base, profile)
    JX, JY = J_of(X), J_of(Y)
    return (
        bracket_fd_oracle(JX, JY, z, h)
        - J @ bracket_fd_oracle(JX, Y, z, h)
        - J @ bracket_fd_oracle(X, JY, z, h)
        - bracket_fd_oracle(X, Y, z, h)
    )


@dataclass(frozen=True)
class IntegrabilityVerdict:
    integrable: bool
    max_abs: float
    mean_abs: float
    samples: int
    max_f_minus_c: float


def integrability_verdict(base: SpaceFormParams, profile: LiftProfile, points, tol: float = ANALYTIC_TOL) -> IntegrabilityVerdict:
    points = list(points)
    if not points:
        raise InputError("integrability verdict needs at least one sample point")
    mags, fc = [], []
    for pt in points:
        mags.append(nijenhuis_analytic(pt, base, profile).max_abs)
        t = lift_blocks(pt, base, profile).t
        fc.append(abs(profile.integrability_scalar(t) - base.c))
    mags = np.array(mags)
    return IntegrabilityVerdict(bool(mags.max() < tol), float(mags.max()), float(mags.mean()), len(points), float(max(fc)))
