"""Constant-curvature base manifolds in the conformally flat chart.

The metric is ``g_ij = delta_ij / F(x)**2`` with ``F = 1 + (c/4)|x|^2``, which has
constant sectional curvature ``c``. Index layout used throughout the package:

* ``gamma[k, i, j]`` is the Christoffel symbol with upper index ``k``;
* ``riemann[h, k, i, j]`` is ``R^h_{kij}``, defined by
  ``R(d_i, d_j) d_k = R^h_{kij} d_h`` with ``R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]``.

With that layout a space form has ``R^h_{kij} = c (delta^h_i g_jk - delta^h_j g_ik)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import fd
from .errors import DomainError, InputError, OracleError


@dataclass(frozen=True)
class SpaceFormParams:
    n: int
    c: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InputError(f"dimension must be an integer >= 2, got {self.n}")
        if not np.isfinite(self.c):
            raise InputError("curvature must be finite")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "c", float(self.c))

    @property
    def low_dimension_warning(self) -> bool:
        """True for n = 2, where the curvature-from-integrability argument needs dim >= 3."""
        return self.n == 2

    def default_radius(self) -> float:
        if self.c <= 0:
            return 1.0
        return min(1.0, 1.0 / np.sqrt(self.c))

    def chart_margin(self, x) -> float:
        """Distance from ``x`` to the chart boundary (inf when the chart is global)."""
        if self.c >= 0:
            return np.inf
        return float(2.0 / np.sqrt(-self.c) - np.linalg.norm(x))


@dataclass(frozen=True)
class BaseMetricEval:
    g: np.ndarray
    g_inv: np.ndarray
    gamma: np.ndarray
    riemann: np.ndarray


def _check_point(x, params: SpaceFormParams) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (params.n,):
        raise InputError(f"expected {params.n} base coordinates, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError("base coordinates must be finite")
    if params.c < 0 and x @ x >= -4.0 / params.c:
        raise DomainError(f"|x|^2 = {x @ x:g} outside the chart |x|^2 < {-4.0 / params.c:g}")
    return x


def conformal_factor(x, params: SpaceFormParams) -> float:
    x = _check_point(x, params)
    return 1.0 + 0.25 * params.c * (x @ x)


def metric_at(x, params: SpaceFormParams) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(g, g_inv)`` at ``x``."""
    F = conformal_factor(x, params)
    eye = np.eye(params.n)
    return eye / F**2, eye * F**2


def christoffel_at(x, params: SpaceFormParams) -> np.ndarray:
    # g = exp(2 sigma) delta with sigma = -log F
    x = _check_point(x, params)
    F = 1.0 + 0.25 * params.c * (x @ x)
    dsigma = -0.5 * params.c * x / F
    eye = np.eye(params.n)
    return (
        np.einsum("ki,j->kij", eye, dsigma)
        + np.einsum("kj,i->kij", eye, dsigma)
        - np.einsum("ij,k->kij", eye, dsigma)
    )


def riemann_identity(x, params: SpaceFormParams) -> np.ndarray:
    g, _ = metric_at(x, params)
    eye = np.eye(params.n)
    return params.c * (np.einsum("hi,jk->hkij", eye, g) - np.einsum("hj,ik->hkij", eye, g))


def riemann_from_christoffel(gamma_fn, x, h: float = fd.DEFAULT_STEP) -> np.ndarray:
    """``R^h_{kij} = d_i G^h_jk - d_j G^h_ik + G^h_il G^l_jk - G^h_jl G^l_ik`` with FD ``d``."""
    x = np.asarray(x, dtype=float)
    gam = gamma_fn(x)
    dgam = fd.jacobian(gamma_fn, x, h)  # dgam[i, h, j, k] = d_i Gamma^h_jk
    return (
        np.einsum("ihjk->hkij", dgam)
        - np.einsum("jhik->hkij", dgam)
        + np.einsum("hil,ljk->hkij", gam, gam)
        - np.einsum("hjl,lik->hkij", gam, gam)
    )


def riemann_at(x, params: SpaceFormParams, method: str = "identity", h: float = fd.DEFAULT_STEP) -> np.ndarray:
    """Curvature tensor from the constant-curvature identity or from FD of the Christoffels."""
    if method == "identity":
        return riemann_identity(x, params)
    if method == "fd":
        x = _check_point(x, params)
        _require_margin(x, params, h)
        return riemann_from_christoffel(lambda y: christoffel_at(y, params), x, h)
    raise ValueError(f"unknown method {method!r}")


def evaluate(x, params: SpaceFormParams) -> BaseMetricEval:
    g, g_inv = metric_at(x, params)
    return BaseMetricEval(g, g_inv, christoffel_at(x, params), riemann_identity(x, params))


def _require_margin(x, params: SpaceFormParams, h: float):
    reach = np.max(fd.steps(x, h)) * np.sqrt(params.n)
    if params.chart_margin(x) <= reach:
        raise OracleError(f"FD step {h:g} reaches outside the chart at |x| = {np.linalg.norm(x):g}")


def christoffel_fd_oracle(x, params: SpaceFormParams, h: float = fd.DEFAULT_STEP) -> np.ndarray:
    """Christoffel symbols from central differences of :func:`metric_at`."""
    x = _check_point(x, params)
    _require_margin(x, params, h)
    _, g_inv = metric_at(x, params)
    dg = fd.jacobian(lambda y: metric_at(y, params)[0], x, h)  # dg[l, i, j] = d_l g_ij
    koszul = dg + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0)  # indexed [i, j, l]
    return 0.5 * np.einsum("kl,ijl->kij", g_inv, koszul)


def sectional_curvature(riemann: np.ndarray, g: np.ndarray, X, Y) -> float:
    """``g(R(X, Y)Y, X) / (|X|^2 |Y|^2 - g(X, Y)^2)``."""
    RXYY = np.einsum("hkij,i,j,k->h", riemann, X, Y, Y)
    num = X @ g @ RXYY
    den = (X @ g @ X) * (Y @ g @ Y) - (X @ g @ Y) ** 2
    return float(num / den)


def sample_base_point(params: SpaceFormParams, rng: np.random.Generator, radius: float | None = None) -> np.ndarray:
    """Uniform point in the ball of the given radius (default per curvature sign)."""
    r = params.default_radius() if radius is None else radius
    d = rng.normal(size=params.n)
    d /= np.linalg.norm(d)
    return d * r * rng.uniform() ** (1.0 / params.n)


def warn_if_low_dimension(params: SpaceFormParams):
    if params.low_dimension_warning:
        warnings.warn("n = 2: deriving constant curvature from integrability needs n >= 3", stacklevel=2)
