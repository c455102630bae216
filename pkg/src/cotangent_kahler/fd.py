"""Central finite differences used by every oracle.

Steps are relative: coordinate ``l`` is perturbed by ``h * (1 + |x_l|)``.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

DEFAULT_STEP = 1e-5


def steps(x: np.ndarray, h: float) -> np.ndarray:
    return h * (1.0 + np.abs(x))


def jacobian(f: Callable[[np.ndarray], np.ndarray], x, h: float = DEFAULT_STEP) -> np.ndarray:
    """Array ``J`` with ``J[l, ...] = d f / d x_l`` (derivative axis first)."""
    x = np.asarray(x, dtype=float)
    hs = steps(x, h)
    out = []
    for l in range(x.size):
        e = np.zeros_like(x)
        e[l] = hs[l]
        out.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2.0 * hs[l]))
    return np.stack(out)


def directional(f: Callable[[np.ndarray], np.ndarray], x, direction, h: float = DEFAULT_STEP):
    """Derivative of ``f`` at ``x`` along ``direction`` (not normalised)."""
    x = np.asarray(x, dtype=float)
    d = np.asarray(direction, dtype=float)
    scale = h * (1.0 + np.max(np.abs(x)))
    return (np.asarray(f(x + scale * d)) - np.asarray(f(x - scale * d))) / (2.0 * scale)


def derivative(f: Callable[[float], float], t: float, h: float = 1e-3, order: int = 1) -> float:
    """Scalar derivative of order 1..3 by five/seven-point central stencils."""
    s = h * (1.0 + abs(t))
    if order == 1:
        return (f(t - 2 * s) - 8 * f(t - s) + 8 * f(t + s) - f(t + 2 * s)) / (12 * s)
    if order == 2:
        return (-f(t - 2 * s) + 16 * f(t - s) - 30 * f(t) + 16 * f(t + s) - f(t + 2 * s)) / (12 * s**2)
    if order == 3:
        return (
            f(t - 3 * s) - 8 * f(t - 2 * s) + 13 * f(t - s) - 13 * f(t + s) + 8 * f(t + 2 * s) - f(t + 3 * s)
        ) / (8 * s**3)
    raise ValueError("order must be 1, 2 or 3")
