"""Levi-Civita connection of the lifted metric, its curvature and Ricci tensor.

Adapted-frame index layouts (``n`` = base dimension):

* ``Q[i, j, h]``  : nabla_{d^i} d^j        = Q^{ij}_h d^h
* ``P[h, i, j]``  : nabla_{d^i} delta_j    = P^{hi}_j delta_h
* ``S[h, i, j]``  : nabla_{delta_i} delta_j = Gamma^h_ij delta_h + S_hij d^h
* full 2n-index arrays use ``(delta_1..delta_n, d^1..d^n)`` ordering;
  ``conn[A, B, C]`` is the C-component of nabla_{E_A} E_B and
  ``K[A, B, C, D]`` the D-component of K(E_A, E_B) E_C.

Derivatives in the fibre direction are exact: every block is a function of
``(g, p, t)`` and ``d^i t = g^{0i}``, and the t-derivatives of u, v, w come from
Taylor jets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fd
from .bundle import lift_blocks, metric_full
from .errors import DomainError, SingularProfileError
from .frame import PhasePoint, adapted_frame_field, bracket_fd_oracle, frame_change_at
from .profile import LiftProfile, ProfileValues
from .spaceform import SpaceFormParams, christoffel_at, metric_at, riemann_identity

CLOSED_FORM_GUARD = 1e-8


@dataclass(frozen=True)
class PointGeometry:
    """Everything the analytic path needs at one phase point."""

    n: int
    c: float
    p: np.ndarray
    g: np.ndarray
    g_inv: np.ndarray
    gamma: np.ndarray
    R: np.ndarray
    R0: np.ndarray
    g0: np.ndarray
    vals: ProfileValues
    G: np.ndarray
    H: np.ndarray
    dG: np.ndarray
    dH: np.ndarray
    d2G: np.ndarray
    d2H: np.ndarray

    @property
    def t(self) -> float:
        return self.vals.t


def _radial_derivatives(a, b, M, L, y, g0, g_inv):
    """F = a(t) M + b(t) y y^T with y = L p; returns F, dF[i,j,k], d2F[m,i,j,k] in p.

    ``a`` and ``b`` are (value, first, second) t-derivatives; ``d^i y_j = L_ji``.
    """
    a0, a1, a2 = a
    b0, b1, b2 = b
    yy = np.outer(y, y)
    F = a0 * M + b0 * yy
    Ly = np.einsum("ji,k->ijk", L, y)  # Ly[i, j, k] = L_ji y_k
    sym = Ly + Ly.transpose(0, 2, 1)  # L_ji y_k + y_j L_ki
    dF = a1 * np.einsum("i,jk->ijk", g0, M) + b1 * np.einsum("i,jk->ijk", g0, yy) + b0 * sym
    d2F = (
        a2 * np.einsum("m,i,jk->mijk", g0, g0, M)
        + a1 * np.einsum("mi,jk->mijk", g_inv, M)
        + b2 * np.einsum("m,i,jk->mijk", g0, g0, yy)
        + b1 * np.einsum("mi,jk->mijk", g_inv, yy)
        + b1 * np.einsum("i,mjk->mijk", g0, sym)
        + b1 * np.einsum("m,ijk->mijk", g0, sym)
        + b0 * (np.einsum("ji,km->mijk", L, L) + np.einsum("jm,ki->mijk", L, L))
    )
    return F, dF, d2F


def point_geometry(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> PointGeometry:
    g, g_inv = metric_at(pt.q, base)
    g0 = g_inv @ pt.p
    t = 0.5 * float(pt.p @ g0)
    U, V, W = profile.jets(t)
    vals = ProfileValues(t, *U.derivs, *V.derivs, *W.derivs)
    inv_u = U.truncate(2).reciprocal().derivs
    G, dG, d2G = _radial_derivatives(U.derivs[:3], V.derivs, g, np.eye(base.n), pt.p, g0, g_inv)
    H, dH, d2H = _radial_derivatives(inv_u, W.derivs, g_inv, g_inv, g0, g0, g_inv)
    R = riemann_identity(pt.q, base)
    R0 = np.einsum("h,hkij->kij", pt.p, R)
    return PointGeometry(base.n, base.c, pt.p, g, g_inv, christoffel_at(pt.q, base), R, R0, g0, vals, G, H, dG, dH, d2G, d2H)


@dataclass(frozen=True)
class ConnCoeffs:
    Q: np.ndarray
    P: np.ndarray
    S: np.ndarray


def _generic_coeffs(geo: PointGeometry) -> ConnCoeffs:
    G, H, dG, dH, R0 = geo.G, geo.H, geo.dG, geo.dH, geo.R0
    # dH[i, j, k] = d^i H^jk ; dG[i, j, k] = d^i G_jk
    symH = dH + np.einsum("jik->ijk", dH) - np.einsum("kij->ijk", dH)
    Q = 0.5 * np.einsum("hk,ijk->ijh", G, symH)
    P = 0.5 * np.einsum("hk,ijk->hij", H, dG - np.einsum("il,ljk->ijk", H, R0))
    S = -0.5 * np.einsum("hk,kij->hij", G, dG) + 0.5 * R0
    return ConnCoeffs(Q, P, S)


def conn_coeffs_generic(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> ConnCoeffs:
    return _generic_coeffs(point_geometry(pt, base, profile))


def conn_coeffs_expanded(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, guard: float = CLOSED_FORM_GUARD) -> ConnCoeffs:
    """Coefficients after substituting the radial blocks and constant curvature.

    Raises :class:`SingularProfileError` when v or w is too small: the
    expanded expressions divide by both.
    """
    geo = point_geometry(pt, base, profile)
    vals, c = geo.vals, geo.c
    u, du, v, dv, w, dw = vals.u, vals.du, vals.v, vals.dv, vals.w, vals.dw
    if abs(v) < guard * max(1.0, abs(u)) or abs(w) < guard / max(1.0, abs(u)) ** 2:
        raise SingularProfileError("expanded connection coefficients need v != 0 and w != 0; use the generic form")
    p, g, gi, g0 = geo.p, geo.g, geo.g_inv, geo.g0
    eye = np.eye(geo.n)
    Q = (
        -(du / (2 * u)) * (np.einsum("ih,j->ijh", eye, g0) + np.einsum("jh,i->ijh", eye, g0))
        - v * (du + 2 * u * u * w) / (2 * u**3 * w) * np.einsum("ij,h->ijh", gi, p)
        - v * (2 * du * w + u * dw) / (2 * u * u * w) * np.einsum("i,j,h->ijh", g0, g0, p)
    )
    P = (
        (du / (2 * u)) * np.einsum("hj,i->hij", eye, g0)
        - ((c + u * v) * w / (2 * v)) * np.einsum("ij,h->hij", eye, g0)
        + ((u * v - c) / (2 * u * u)) * np.einsum("ih,j->hij", gi, p)
        + ((v * w * (u * v - c) + u * w * (du * v - u * dv)) / (2 * u * v)) * np.einsum("i,h,j->hij", g0, g0, p)
    )
    S = (
        ((c - u * v) / 2) * np.einsum("jh,i->hij", g, p)
        - ((c + u * v) / 2) * np.einsum("ih,j->hij", g, p)
        + (du * v / (2 * u * w)) * np.einsum("ij,h->hij", g, p)
        + (v * (dv - 2 * u * v * w) / (2 * u * w)) * np.einsum("h,i,j->hij", p, p, p)
    )
    return ConnCoeffs(Q, P, S)


def assemble_connection(geo: PointGeometry, coeffs: ConnCoeffs) -> np.ndarray:
    """Full adapted-frame connection array ``conn[A, B, C]``."""
    n = geo.n
    Q, P, S, Gam = coeffs.Q, coeffs.P, coeffs.S, geo.gamma
    conn = np.zeros((2 * n, 2 * n, 2 * n))
    conn[:n, :n, :n] = np.einsum("hij->ijh", Gam)
    conn[:n, :n, n:] = np.einsum("hij->ijh", S)
    conn[:n, n:, n:] = -np.einsum("jih->ijh", Gam)
    conn[:n, n:, :n] = np.einsum("hji->ijh", P)
    conn[n:, :n, :n] = np.einsum("hij->ijh", P)
    conn[n:, n:, n:] = Q
    return conn


def full_connection(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> np.ndarray:
    geo = point_geometry(pt, base, profile)
    return assemble_connection(geo, _generic_coeffs(geo))


# ---------------------------------------------------------------------------
# finite-difference oracles
# ---------------------------------------------------------------------------


def koszul_oracle(metric_fn, fields_fn, z, h: float = fd.DEFAULT_STEP) -> np.ndarray:
    """``nabla_{X_a} X_b`` in coordinates from the six-term Koszul formula.

    ``metric_fn(z)`` returns the coordinate metric matrix, ``fields_fn(z)`` a
    matrix whose columns are the vector fields ``X_a``. Every derivative is a
    central difference; the test vector Z runs over the coordinate basis.
    Result ``[a, b, :]``.
    """
    z = np.asarray(z, dtype=float)
    M, F = metric_fn(z), np.asarray(fields_fn(z))
    dM, dF = fd.jacobian(metric_fn, z, h), fd.jacobian(fields_fn, z, h)  # dM[l,i,j], dF[l,k,a]
    X_of_GYZ = np.einsum("la,ldk,kb->abd", F, dM, F) + np.einsum("la,dk,lkb->abd", F, M, dF)
    Y_of_GXZ = X_of_GYZ.transpose(1, 0, 2)
    Z_of_GXY = (
        np.einsum("dka,kj,jb->abd", dF, M, F) + np.einsum("ka,dkj,jb->abd", F, dM, F) + np.einsum("ka,kj,djb->abd", F, M, dF)
    )
    bracket_XY = np.einsum("la,lkb->abk", F, dF) - np.einsum("lb,lka->abk", F, dF)
    G_XY_Z = np.einsum("abk,kd->abd", bracket_XY, M)
    # [X, d_D] = -d_D X
    G_XZ_Y = -np.einsum("dka,kj,jb->abd", dF, M, F)
    G_YZ_X = -np.einsum("dkb,kj,ja->abd", dF, M, F)
    rhs = X_of_GYZ + Y_of_GXZ - Z_of_GXY + G_XY_Z - G_XZ_Y - G_YZ_X
    return 0.5 * np.einsum("kd,abd->abk", np.linalg.inv(M), rhs)


def _phase_metric(base, profile):
    return lambda z: metric_full(PhasePoint.from_z(z), base, profile).M


def koszul_adapted(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = fd.DEFAULT_STEP) -> np.ndarray:
    """Oracle for the full adapted connection array ``conn[A, B, C]``."""
    nab = koszul_oracle(_phase_metric(base, profile), adapted_frame_field(base), pt.z, h)
    B_inv = frame_change_at(pt, base).B_inv
    return np.einsum("ck,abk->abc", B_inv, nab)


def curvature_fd_oracle(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = 1e-4) -> np.ndarray:
    """Adapted ``K[A, B, C, D]`` from nested central differences of the Koszul oracle."""
    metric_fn = _phase_metric(base, profile)
    E = adapted_frame_field(base)
    z = pt.z
    dim = z.size
    eye = lambda y: np.eye(dim)  # noqa: E731
    Gam = koszul_oracle(metric_fn, eye, z, h)  # coordinate Christoffels, [l, m, k]
    W = lambda y: koszul_oracle(metric_fn, E, y, h)  # noqa: E731
    Wz, dW = W(z), fd.jacobian(W, z, h)  # dW[l, b, c, k]
    F, dF = E(z), fd.jacobian(E, z, h)
    nabla_W = np.einsum("la,lbck->abck", F, dW) + np.einsum("lmk,la,bcm->abck", Gam, F, Wz)
    br = np.einsum("la,lkb->abk", F, dF) - np.einsum("lb,lka->abk", F, dF)
    nabla_br = np.einsum("lkc,abl->abck", dF, br) + np.einsum("lmk,abl,mc->abck", Gam, br, F)
    K = nabla_W - nabla_W.transpose(1, 0, 2, 3) - nabla_br
    B_inv = frame_change_at(pt, base).B_inv
    return np.einsum("dk,abck->abcd", B_inv, K)


# ---------------------------------------------------------------------------
# structural residuals of the analytic connection
# ---------------------------------------------------------------------------


def torsion_residual(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = fd.DEFAULT_STEP) -> float:
    conn = full_connection(pt, base, profile)
    E = adapted_frame_field(base)
    br = np.einsum("ck,abk->abc", frame_change_at(pt, base).B_inv, bracket_fd_oracle(E, E, pt.z, h))
    return float(np.max(np.abs(conn - conn.transpose(1, 0, 2) - br)))


def _adapted_field(base, profile, which):
    def field(z):
        blocks = lift_blocks(PhasePoint.from_z(z), base, profile)
        return blocks.metric() if which == "metric" else blocks.complex_structure()

    return field


def metric_compatibility_residual(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = fd.DEFAULT_STEP) -> float:
    """max |E_A(G_BC) - G(nabla_A E_B, E_C) - G(E_B, nabla_A E_C)|."""
    conn = full_connection(pt, base, profile)
    Gf = _adapted_field(base, profile, "metric")
    Gz, dG = Gf(pt.z), fd.jacobian(Gf, pt.z, h)
    B = frame_change_at(pt, base).B
    deriv = np.einsum("la,lbc->abc", B, dG)
    res = deriv - np.einsum("abd,dc->abc", conn, Gz) - np.einsum("acd,bd->abc", conn, Gz)
    return float(np.max(np.abs(res)))


def kahler_residual(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, h: float = fd.DEFAULT_STEP) -> float:
    """max |(nabla_{E_A} J) E_B| in adapted components."""
    conn = full_connection(pt, base, profile)
    Jf = _adapted_field(base, profile, "j")
    Jz, dJ = Jf(pt.z), fd.jacobian(Jf, pt.z, h)
    B = frame_change_at(pt, base).B
    EaJ = np.einsum("la,lcb->acb", B, dJ)  # E_A(J^C_B), indexed [A, C, B]
    res = np.einsum("acb->abc", EaJ) + np.einsum("cb,acd->abd", Jz, conn) - np.einsum("abc,dc->abd", conn, Jz)
    return float(np.max(np.abs(res)))


# ---------------------------------------------------------------------------
# curvature by block algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvatureBlocks:
    """Six curvature blocks with index order matching their symbols.

    PPP[i,j,k,h]: K(d^i,d^j)d^k on d^h      PPQ[i,j,h,k]: K(d^i,d^j)delta_k on delta_h
    QQP[k,i,j,h]: K(delta_i,delta_j)d^k on d^h
    QQQ[i,j,k,h]: K(delta_i,delta_j)delta_k on delta_h
    PQQ[i,j,k,h]: K(d^i,delta_j)delta_k on d^h
    PQP[j,i,k,h]: K(d^i,delta_j)d^k on delta_h
    """

    PPP: np.ndarray
    PPQ: np.ndarray
    QQP: np.ndarray
    QQQ: np.ndarray
    PQQ: np.ndarray
    PQP: np.ndarray

    def full(self) -> np.ndarray:
        """Assemble ``K[A, B, C, D]``; components absent from the six blocks are zero."""
        n = self.PPP.shape[0]
        K = np.zeros((2 * n,) * 4)
        v = slice(n, 2 * n)
        hz = slice(0, n)
        K[v, v, v, v] = self.PPP
        K[v, v, hz, hz] = np.einsum("ijhk->ijkh", self.PPQ)
        K[hz, hz, v, v] = np.einsum("kijh->ijkh", self.QQP)
        K[hz, hz, hz, hz] = self.QQQ
        K[v, hz, hz, v] = self.PQQ
        K[hz, v, hz, v] = -np.einsum("ijkh->jikh", self.PQQ)
        pqp = np.einsum("jikh->ijkh", self.PQP)
        K[v, hz, v, hz] = pqp
        K[hz, v, v, hz] = -np.einsum("ijkh->jikh", pqp)
        return K


def _coefficient_derivatives(geo: PointGeometry, co: ConnCoeffs):
    G, H, dG, dH, d2G, d2H = geo.G, geo.H, geo.dG, geo.dH, geo.d2G, geo.d2H
    R0, R = geo.R0, geo.R
    symH = dH + np.einsum("jik->ijk", dH) - np.einsum("kij->ijk", dH)
    d2symH = d2H + np.einsum("mjik->mijk", d2H) - np.einsum("mkij->mijk", d2H)
    dQ = 0.5 * (np.einsum("mhk,ijk->mijh", dG, symH) + np.einsum("hk,mijk->mijh", G, d2symH))
    inner = dG - np.einsum("il,ljk->ijk", H, R0)  # [i, j, k]
    # d^m R0_ljk = R^m_ljk
    d_inner = d2G - np.einsum("mil,ljk->mijk", dH, R0) - np.einsum("il,mljk->mijk", H, R)
    dP = 0.5 * (np.einsum("mhk,ijk->mhij", dH, inner) + np.einsum("hk,mijk->mhij", H, d_inner))
    dS = -0.5 * (np.einsum("mhk,kij->mhij", dG, dG) + np.einsum("hk,mkij->mhij", G, d2G)) + 0.5 * R
    return dQ, dP, dS


def _blocks_from(geo: PointGeometry, co: ConnCoeffs) -> CurvatureBlocks:
    Q, P, S, R, R0 = co.Q, co.P, co.S, geo.R, geo.R0
    dQ, dP, dS = _coefficient_derivatives(geo, co)
    PPP = (
        dQ
        - dQ.transpose(1, 0, 2, 3)
        + np.einsum("jkl,ilh->ijkh", Q, Q)
        - np.einsum("ikl,jlh->ijkh", Q, Q)
    )
    # dP[m, h, i, j] = d^m P^{hi}_j
    PPQ = (
        np.einsum("ihjk->ijhk", dP)
        - np.einsum("jhik->ijhk", dP)
        + np.einsum("ljk,hil->ijhk", P, P)
        - np.einsum("lik,hjl->ijhk", P, P)
    )
    QQP = (
        -np.einsum("khij->kijh", R)
        - np.einsum("lij,lkh->kijh", R0, Q)
        + np.einsum("hil,lkj->kijh", S, P)
        - np.einsum("hjl,lki->kijh", S, P)
    )
    QQQ = (
        np.einsum("hkij->ijkh", R)
        - np.einsum("lij,hlk->ijkh", R0, P)
        + np.einsum("ljk,hli->ijkh", S, P)
        - np.einsum("lik,hlj->ijkh", S, P)
    )
    # dS[m, h, j, k] = d^m S_hjk
    PQQ = np.einsum("ihjk->ijkh", dS) + np.einsum("ljk,ilh->ijkh", S, Q) - np.einsum("hjl,lik->ijkh", S, P)
    PQP = np.einsum("ihkj->jikh", dP) + np.einsum("hil,lkj->jikh", P, P) - np.einsum("ikl,hlj->jikh", Q, P)
    return CurvatureBlocks(PPP, PPQ, QQP, QQQ, PQQ, PQP)


def curvature_blocks(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> CurvatureBlocks:
    geo = point_geometry(pt, base, profile)
    return _blocks_from(geo, _generic_coeffs(geo))


# ---------------------------------------------------------------------------
# Ricci tensor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RicciBlocks:
    RicQQ: np.ndarray
    RicPP: np.ndarray
    cross: np.ndarray


def ricci_from_blocks(K: CurvatureBlocks) -> RicciBlocks:
    RicPP = np.einsum("hjkh->jk", K.PPP) - np.einsum("hjkh->jk", K.PQP)
    RicQQ = np.einsum("hjkh->jk", K.QQQ) + np.einsum("hjkh->jk", K.PQQ)
    n = RicPP.shape[0]
    # Ric(d^j, delta_k) from the assembled tensor, not assumed zero
    full = K.full()
    cross = np.einsum("abca->bc", full)[n:, :n]
    return RicciBlocks(RicQQ, RicPP, cross)


def ricci_blocks(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile) -> RicciBlocks:
    return ricci_from_blocks(curvature_blocks(pt, base, profile))


def ricci_from_full(K: np.ndarray) -> np.ndarray:
    """``Ric[B, C] = sum_A K[A, B, C, A]`` for any full adapted curvature array."""
    return np.einsum("abca->bc", K)


@dataclass(frozen=True)
class RicciCoefficients:
    a: float
    alpha: float
    beta: float
    gamma: float


def ricci_coefficients(n: int, c: float, t: float, u: float, du: float, d2u: float, d3u: float) -> RicciCoefficients:
    """Polynomials a, alpha, beta, gamma in (n, c, t, u, u', u'', u''')."""
    u1, u2, u3 = du, d2u, d3u
    m = u - 2 * t * u1
    k = 2 * c * t - u * u
    a = n * m * (2 * c * u - 2 * c * t * u1 - u * u * u1) + 2 * k * (t * u * u2 + u * u1 - t * u1**2)
    alpha = n * m * (
        -2 * c**2 * u**3
        + 6 * c**2 * t * u**2 * u1
        + 3 * c * u**4 * u1
        - 12 * c**2 * t**2 * u * u1**2
        - 3 * u**5 * u1**2
        + 8 * c**2 * t**3 * u1**3
        - 4 * c * t**2 * u**2 * u1**3
        + 4 * t * u**4 * u1**3
        - 4 * c**2 * t**2 * u**2 * u2
        + 4 * c * t * u**4 * u2
        - u**6 * u2
    ) + 2 * k * (
        -3 * c * u**3 * u1
        + 7 * c * t * u**2 * u1**2
        + 4 * u**4 * u1**2
        - 8 * c * t**2 * u * u1**3
        - 8 * t * u**3 * u1**3
        + 4 * c * t**3 * u1**4
        + 4 * t**2 * u**2 * u1**4
        - 7 * c * t * u**3 * u2
        + 2 * u**5 * u2
        + 6 * c * t**2 * u**2 * u1 * u2
        + 3 * t * u**4 * u1 * u2
        - 6 * t**2 * u**3 * u1**2 * u2
        - 8 * c * t**3 * u**2 * u2**2
        + 4 * t**2 * u**4 * u2**2
        - 2 * c * t**2 * u**3 * u3
        + t * u**5 * u3
        + 4 * c * t**3 * u**2 * u1 * u3
        - 2 * t**2 * u**4 * u1 * u3
    )
    beta = n * m * (
        2 * c**2 * u
        - 2 * c**2 * t * u1
        - 3 * c * u**2 * u1
        + 6 * c * t * u * u1**2
        - u**3 * u1**2
        - 4 * c * t**2 * u1**3
        + 2 * t * u**2 * u1**3
        + 2 * c * t * u**2 * u2
        - u**4 * u2
    ) + 2 * (
        2 * c**2 * t * u * u1
        + c * u**3 * u1
        - 2 * c**2 * t**2 * u1**2
        - 5 * c * t * u**2 * u1**2
        - 2 * u**4 * u1**2
        + 8 * c * t**2 * u * u1**3
        + 4 * t * u**3 * u1**3
        - 4 * c * t**3 * u1**4
        - 2 * t**2 * u**2 * u1**4
        + 2 * c**2 * t**2 * u * u2
        + 5 * c * t * u**3 * u2
        - 2 * u**5 * u2
        - 6 * c * t**2 * u**2 * u1 * u2
        - t * u**4 * u1 * u2
        + 4 * t**2 * u**3 * u1**2 * u2
        + 8 * c * t**3 * u**2 * u2**2
        - 4 * t**2 * u**4 * u2**2
        + 2 * c * t**2 * u**3 * u3
        - t * u**5 * u3
        - 4 * c * t**3 * u**2 * u1 * u3
        + 2 * t**2 * u**4 * u1 * u3
    )
    gamma = n * (u * u - 2 * c * t) * (2 * t * u1 - u) * (u * u * u2 - 2 * t * u1**3 + 2 * u * u1**2) + 2 * (
        2 * c * u**3 * u1
        - 4 * c * t * u**2 * u1**2
        - 3 * u**4 * u1**2
        + 6 * c * t**2 * u * u1**3
        + 5 * t * u**3 * u1**3
        - 4 * c * t**3 * u1**4
        - 2 * t**2 * u**2 * u1**4
        + 6 * c * t * u**3 * u2
        - 2 * u**5 * u2
        - 4 * c * t**2 * u**2 * u1 * u2
        - 2 * t * u**4 * u1 * u2
        + 4 * t**2 * u**3 * u1**2 * u2
        + 8 * c * t**3 * u**2 * u2**2
        - 4 * t**2 * u**4 * u2**2
        + 2 * c * t**2 * u**3 * u3
        - t * u**5 * u3
        - 4 * c * t**3 * u**2 * u1 * u3
        + 2 * t**2 * u**4 * u1 * u3
    )
    return RicciCoefficients(a, alpha, beta, gamma)


def _closed_form_denominators(geo: PointGeometry, guard: float):
    vals = geo.vals
    m = vals.u - 2 * vals.t * vals.du
    k = vals.u**2 - 2 * geo.c * vals.t
    scale = max(1.0, vals.u**2)
    if abs(m) < guard * max(1.0, abs(vals.u)) or abs(k) < guard * scale:
        raise DomainError(f"closed-form Ricci denominators vanish: u - 2tu' = {m:g}, u^2 - 2ct = {k:g}")
    return m, k


def ricci_closed_forms(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, guard: float = CLOSED_FORM_GUARD) -> RicciBlocks:
    """Ricci blocks of an integrable lift from the a, alpha, beta polynomials."""
    geo = point_geometry(pt, base, profile)
    vals = geo.vals
    u = vals.u
    m, k = _closed_form_denominators(geo, guard)
    co = ricci_coefficients(base.n, base.c, vals.t, u, vals.du, vals.d2u, vals.d3u)
    p, g0 = geo.p, geo.g0
    RicQQ = co.a / (2 * m**2) * geo.g + co.alpha / (2 * u**2 * m**4) * np.outer(p, p)
    RicPP = co.a / (2 * u**2 * m**2) * geo.g_inv + co.beta / (2 * u**2 * k * m**2) * np.outer(g0, g0)
    return RicciBlocks(RicQQ, RicPP, np.zeros((base.n, base.n)))


@dataclass(frozen=True)
class GammaDiffs:
    gamma: float
    DiffQQ: np.ndarray
    DiffPP: np.ndarray
    DiffQQ_factored: np.ndarray
    DiffPP_factored: np.ndarray


def gamma_and_diffs(pt: PhasePoint, base: SpaceFormParams, profile: LiftProfile, guard: float = CLOSED_FORM_GUARD) -> GammaDiffs:
    """Deviation from the Einstein condition: trace-route differences and their gamma-factored forms."""
    geo = point_geometry(pt, base, profile)
    vals = geo.vals
    u = vals.u
    m, k = _closed_form_denominators(geo, guard)
    co = ricci_coefficients(base.n, base.c, vals.t, u, vals.du, vals.d2u, vals.d3u)
    ric = ricci_from_blocks(_blocks_from(geo, _generic_coeffs(geo)))
    lam = co.a / (2 * u * m**2)
    diff_qq = ric.RicQQ - lam * geo.G
    diff_pp = ric.RicPP - lam * geo.H
    fac_qq = k / (2 * u**2 * m**4) * co.gamma * np.outer(geo.p, geo.p)
    fac_pp = co.gamma / (2 * u**2 * k * m**2) * np.outer(geo.g0, geo.g0)
    return GammaDiffs(co.gamma, diff_qq, diff_pp, fac_qq, fac_pp)
