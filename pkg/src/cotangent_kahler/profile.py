"""Coefficient functions u, v, w of the energy density t.

``u`` is given by a closed-form family (exact derivatives through :class:`Jet`)
or by a callback whose derivatives fall back to finite differences. ``v`` is
either supplied explicitly or obtained from ``u`` through the integrability
relation ``v = (c - u u') / (2 t u' - u)``; ``w = -v / (u (u + 2 t v))`` always.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import fd
from .errors import DomainError, InadmissibleProfileError, InputError, SingularProfileError
from .jets import Jet

DEFAULT_GUARD = 1e-8


class TFunction:
    """A smooth scalar function of t with derivatives up to order three."""

    tag = "abstract"

    def jet(self, t: float, order: int = 3) -> Jet:
        raise NotImplementedError

    def derivs(self, t: float, order: int = 3) -> np.ndarray:
        return self.jet(t, order).derivs

    def __call__(self, t: float) -> float:
        return self.jet(t, 0).value

    def describe(self) -> dict:
        return {"family": self.tag}


@dataclass(frozen=True)
class Constant(TFunction):
    value: float
    tag = "constant"

    def jet(self, t, order=3):
        return Jet.constant(self.value, order)

    def describe(self):
        return {"family": self.tag, "value": self.value}


@dataclass(frozen=True)
class Polynomial(TFunction):
    """``sum_k coeffs[k] t**k``."""

    coeffs: tuple
    tag = "polynomial"

    def jet(self, t, order=3):
        poly = np.polynomial.Polynomial(self.coeffs)
        return Jet([poly.deriv(k)(t) if k else poly(t) for k in range(order + 1)])

    def describe(self):
        return {"family": self.tag, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class SqrtFamily(TFunction):
    """``A + sqrt(A**2 + B t)``; the Einstein solution is ``B = -2c``."""

    A: float
    B: float
    tag = "sqrt"

    def jet(self, t, order=3):
        rad = self.A**2 + self.B * t
        if rad <= 0.0:
            raise DomainError(f"A^2 + B t = {rad:g} <= 0 at t = {t:g}")
        T = Jet.variable(t, order)
        return (T * self.B + self.A**2).sqrt() + self.A

    def describe(self):
        return {"family": self.tag, "A": self.A, "B": self.B}


@dataclass(frozen=True)
class Callback(TFunction):
    """Arbitrary user function; derivatives by central differences."""

    fn: Callable[[float], float]
    h: float = 1e-3
    tag = "callback"

    def jet(self, t, order=3):
        d = [self.fn(t)] + [fd.derivative(self.fn, t, self.h, k) for k in range(1, order + 1)]
        return Jet(d)


@dataclass(frozen=True)
class EinsteinProfileParams:
    A: float
    c: float
    n: int = 3

    def __post_init__(self):
        if not (np.isfinite(self.A) and self.A > 0):
            raise InputError(f"A must be positive, got {self.A}")

    @property
    def t_max(self) -> float:
        """Supremum of admissible t (``inf`` unless c > 0)."""
        return self.A**2 / (2.0 * self.c) if self.c > 0 else np.inf

    @property
    def einstein_constant(self) -> float:
        return (self.n + 1) * self.c / self.A

    @property
    def holomorphic_curvature(self) -> float:
        return 2.0 * self.c / self.A


class ProfileValues(NamedTuple):
    t: float
    u: float
    du: float
    d2u: float
    d3u: float
    v: float
    dv: float
    d2v: float
    w: float
    dw: float
    d2w: float


def v_from_u(u: float, du: float, c: float, t: float, guard: float = DEFAULT_GUARD) -> float:
    den = 2.0 * t * du - u
    if abs(den) < guard * max(abs(u), 1.0):
        raise SingularProfileError(f"2 t u' - u = {den:g} is singular at t = {t:g}")
    return (c - u * du) / den


def w_from_uv(u: float, v: float, t: float) -> float:
    if u <= 0 or u + 2.0 * t * v <= 0:
        raise InadmissibleProfileError(f"u = {u:g}, u + 2tv = {u + 2 * t * v:g} at t = {t:g}")
    return -v / (u * (u + 2.0 * t * v))


def einstein_u(params: EinsteinProfileParams, t: float) -> tuple[float, float, float, float]:
    """``u = A + s`` with ``s = sqrt(A^2 - 2ct)`` and its first three derivatives."""
    if t < 0 or t >= params.t_max:
        raise DomainError(f"t = {t:g} outside [0, {params.t_max:g})")
    c = params.c
    s = np.sqrt(params.A**2 - 2.0 * c * t)
    return params.A + s, -c / s, -(c**2) / s**3, -3.0 * c**3 / s**5


def ode_residual(u: float, du: float, d2u: float, t: float) -> float:
    """``u^2 u'' - 2 t u'^3 + 2 u u'^2``, the n-independent part of the Einstein condition."""
    return u * u * d2u - 2.0 * t * du**3 + 2.0 * u * du * du


def profile_ode_residual(u: TFunction, t: float) -> float:
    d = u.derivs(t, 2)
    return ode_residual(d[0], d[1], d[2], t)


def closed_form_vw(params: EinsteinProfileParams, t: float) -> tuple[float, float]:
    """v and w of the Einstein profile, including the t = 0 limits."""
    A, c = params.A, params.c
    if t < 0 or t >= params.t_max:
        raise DomainError(f"t = {t:g} outside [0, {params.t_max:g})")
    if t == 0.0:
        return -3.0 * c / (2.0 * A), 3.0 * c / (8.0 * A**3)
    if c == 0.0:
        return 0.0, 0.0
    s2 = A * A - 2.0 * c * t
    s = np.sqrt(s2)
    if abs(c) * t > 1e-3 * A * A:
        v = (A - 4.0 * c * t / A - s) / (2.0 * t)
        w = (-(A**3) + 3.0 * A * c * t + s2**1.5) / (4.0 * c * t * t * s2)
    else:
        # cancellation-free rewrite near the zero section (A - s = 2ct / (A + s))
        v = c / (A + s) - 2.0 * c / A
        w = -v * A / (2.0 * s2 * (A + s))
    return v, w


@dataclass(frozen=True)
class LiftProfile:
    """The pair (u, v) defining the lifted metric and complex structure.

    With ``v=None`` the second coefficient comes from the integrability relation
    for base curvature ``c``; ``v_offset`` is added afterwards, which is how
    non-integrable perturbations are built.
    """

    u: TFunction
    c: float | None = None
    v: TFunction | None = None
    v_offset: float = 0.0
    guard: float = DEFAULT_GUARD
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.v is None and self.c is None:
            raise InputError("need either an explicit v or a curvature c for the integrable v")

    @classmethod
    def integrable(cls, u: TFunction, c: float, label: str = "") -> LiftProfile:
        return cls(u=u, c=c, label=label or f"integrable-{u.tag}")

    @classmethod
    def einstein(cls, A: float, c: float) -> LiftProfile:
        return cls(u=SqrtFamily(A, -2.0 * c), c=c, label="einstein")

    @classmethod
    def explicit(cls, u: TFunction, v: TFunction, label: str = "") -> LiftProfile:
        return cls(u=u, v=v, label=label or f"explicit-{u.tag}")

    @property
    def is_integrable_form(self) -> bool:
        return self.v is None and self.v_offset == 0.0

    def perturbed(self, dv: float) -> LiftProfile:
        return LiftProfile(self.u, self.c, self.v, self.v_offset + dv, self.guard, f"{self.label}+{dv:g}")

    def uv_jets(self, t: float) -> tuple[Jet, Jet]:
        """u to third order, v to second order; no positivity checks."""
        if t < 0:
            raise DomainError(f"energy density must be >= 0, got {t:g}")
        U = self.u.jet(t, 3)
        if self.v is not None:
            V = self.v.jet(t, 2)
        else:
            U2, dU = U.truncate(2), U.diff()
            T = Jet.variable(t, 2)
            den = T * dU * 2.0 - U2
            if abs(den.value) < self.guard * max(abs(U.value), 1.0):
                raise SingularProfileError(f"2 t u' - u = {den.value:g} is singular at t = {t:g}")
            sing = U.value**2 - 2.0 * self.c * t
            if abs(sing) < self.guard * U.value**2:
                raise SingularProfileError(f"u^2 - 2ct = {sing:g} inside the guard band at t = {t:g}")
            V = (self.c - U2 * dU) / den
        return U, V + self.v_offset

    def jets(self, t: float) -> tuple[Jet, Jet, Jet]:
        U, V = self.uv_jets(t)
        u, v = U.value, V.value
        if u <= 0 or u + 2.0 * t * v <= 0:
            raise InadmissibleProfileError(f"u = {u:g}, u + 2tv = {u + 2 * t * v:g} at t = {t:g}")
        U2 = U.truncate(2)
        T = Jet.variable(t, 2)
        W = -V / (U2 * (U2 + T * V * 2.0))
        return U, V, W

    def values(self, t: float) -> ProfileValues:
        U, V, W = self.jets(t)
        return ProfileValues(t, *U.derivs, *V.derivs, *W.derivs)

    def integrability_scalar(self, t: float) -> float:
        """``v (2 t u' - u) + u u'``; equals c exactly when J is integrable."""
        U, V = self.uv_jets(t)
        u, du, v = U[0], U[1], V[0]
        return v * (2.0 * t * du - u) + u * du

    def describe(self) -> dict:
        out = {"label": self.label, "u": self.u.describe()}
        out["v"] = "integrable" if self.v is None else self.v.describe()
        if self.v_offset:
            out["v_offset"] = self.v_offset
        return out


@dataclass(frozen=True)
class AdmissibilityReport:
    t: np.ndarray
    u_positive: np.ndarray
    u_plus_2tv_positive: np.ndarray
    u_plus_2tv: np.ndarray
    singular_distance: np.ndarray
    in_domain: np.ndarray

    @property
    def admissible(self) -> np.ndarray:
        return self.in_domain & self.u_positive & self.u_plus_2tv_positive

    @property
    def all_admissible(self) -> bool:
        return bool(np.all(self.admissible))


def positivity_check(profile: LiftProfile, t_grid) -> AdmissibilityReport:
    """Evaluate the positivity conditions on a grid without raising.

    Points where the profile cannot be evaluated (outside the tube, or in a
    singular guard band) are flagged as out of domain.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    m = t_grid.size
    up, sp, s, dist = np.zeros(m, bool), np.zeros(m, bool), np.full(m, np.nan), np.full(m, np.nan)
    ok = np.zeros(m, bool)
    for k, t in enumerate(t_grid):
        try:
            U, V = profile.uv_jets(t)
        except DomainError:
            continue
        ok[k] = True
        u, v = U.value, V.value
        up[k] = u > 0
        s[k] = u + 2.0 * t * v
        sp[k] = s[k] > 0
        if profile.c is not None:
            dist[k] = abs(u * u - 2.0 * profile.c * t)
    return AdmissibilityReport(t_grid, up, sp, s, dist, ok)
