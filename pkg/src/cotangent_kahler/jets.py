"""Truncated Taylor arithmetic in one variable.

A :class:`Jet` stores the derivatives ``f(t), f'(t), ..., f^(k)(t)`` at a
fixed point. Products, quotients and square roots propagate those derivatives
exactly, so rational expressions in u and its derivatives (v, w and friends)
get exact derivatives without finite differences.
"""

from __future__ import annotations

from math import factorial

import numpy as np


class Jet:
    __slots__ = ("_c",)

    def __init__(self, derivs):
        d = np.asarray(derivs, dtype=float)
        if d.ndim != 1 or d.size == 0:
            raise ValueError("a jet needs a non-empty 1-d derivative vector")
        self._c = d / np.array([factorial(k) for k in range(d.size)])

    @classmethod
    def _from_taylor(cls, coeffs) -> Jet:
        j = cls.__new__(cls)
        j._c = np.asarray(coeffs, dtype=float)
        return j

    @classmethod
    def variable(cls, t: float, order: int) -> Jet:
        d = np.zeros(order + 1)
        d[0] = t
        if order >= 1:
            d[1] = 1.0
        return cls(d)

    @classmethod
    def constant(cls, value: float, order: int) -> Jet:
        d = np.zeros(order + 1)
        d[0] = value
        return cls(d)

    @property
    def order(self) -> int:
        return self._c.size - 1

    @property
    def derivs(self) -> np.ndarray:
        return self._c * np.array([factorial(k) for k in range(self._c.size)])

    @property
    def value(self) -> float:
        return float(self._c[0])

    def __getitem__(self, k: int) -> float:
        return float(self._c[k] * factorial(k))

    def truncate(self, order: int) -> Jet:
        return Jet._from_taylor(self._c[: order + 1])

    def diff(self) -> Jet:
        """Jet of the derivative; one order shorter."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self._c.size)
        return Jet._from_taylor(self._c[1:] * k)

    def _coerce(self, other):
        if isinstance(other, Jet):
            m = min(self.order, other.order)
            return self._c[: m + 1], other._c[: m + 1]
        c = np.zeros_like(self._c)
        c[0] = float(other)
        return self._c, c

    def __add__(self, other):
        a, b = self._coerce(other)
        return Jet._from_taylor(a + b)

    __radd__ = __add__

    def __neg__(self):
        return Jet._from_taylor(-self._c)

    def __sub__(self, other):
        a, b = self._coerce(other)
        return Jet._from_taylor(a - b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return Jet._from_taylor(b - a)

    def __mul__(self, other):
        a, b = self._coerce(other)
        return Jet._from_taylor(np.convolve(a, b)[: a.size])

    __rmul__ = __mul__

    def reciprocal(self) -> Jet:
        a = self._c
        if a[0] == 0.0:
            raise ZeroDivisionError("jet reciprocal at a zero value")
        r = np.zeros_like(a)
        r[0] = 1.0 / a[0]
        for k in range(1, a.size):
            r[k] = -np.dot(a[1 : k + 1], r[k - 1 :: -1][:k]) / a[0]
        return Jet._from_taylor(r)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet._from_taylor(self._c / float(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def sqrt(self) -> Jet:
        a = self._c
        if a[0] <= 0.0:
            raise ValueError("jet sqrt needs a positive value")
        s = np.zeros_like(a)
        s[0] = np.sqrt(a[0])
        for k in range(1, a.size):
            s[k] = (a[k] - np.dot(s[1:k], s[k - 1 : 0 : -1])) / (2.0 * s[0])
        return Jet._from_taylor(s)

    def __repr__(self) -> str:
        return f"Jet({self.derivs.tolist()})"
