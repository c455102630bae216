import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cotangent_kahler.jets import Jet

reals = st.floats(min_value=0.1, max_value=3.0)


class TestJetArithmetic:
    def test_variable_and_constant(self):
        x = Jet.variable(2.0, 3)
        assert list(x.derivs) == [2.0, 1.0, 0.0, 0.0]
        assert list(Jet.constant(5.0, 2).derivs) == [5.0, 0.0, 0.0]

    def test_cube(self):
        x = Jet.variable(2.0, 3)
        y = x * x * x
        np.testing.assert_allclose(y.derivs, [8.0, 12.0, 12.0, 6.0])

    def test_mixed_orders_truncate(self):
        a, b = Jet.variable(1.0, 3), Jet.variable(1.0, 1)
        assert (a + b).order == 1

    @given(reals)
    def test_reciprocal_matches_closed_form(self, t):
        y = 1.0 / Jet.variable(t, 3)
        np.testing.assert_allclose(y.derivs, [1 / t, -1 / t**2, 2 / t**3, -6 / t**4], rtol=1e-12)

    @given(reals)
    def test_sqrt_matches_closed_form(self, t):
        y = Jet.variable(t, 3).sqrt()
        s = math.sqrt(t)
        np.testing.assert_allclose(y.derivs, [s, 0.5 / s, -0.25 / s**3, 0.375 / s**5], rtol=1e-12)

    @given(reals, reals)
    def test_quotient_rule(self, t, a):
        x = Jet.variable(t, 2)
        q = (x + a) / (x * x + 1.0)
        f = lambda s: (s + a) / (s * s + 1)  # noqa: E731
        h = 1e-4
        assert q[1] == pytest.approx((f(t + h) - f(t - h)) / (2 * h), rel=1e-6, abs=1e-9)

    def test_diff_lowers_order(self):
        y = Jet.variable(1.5, 3) * Jet.variable(1.5, 3)
        d = y.diff()
        assert d.order == 2
        np.testing.assert_allclose(d.derivs, [3.0, 2.0, 0.0])
