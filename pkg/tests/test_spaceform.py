import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cotangent_kahler.errors import DomainError, InputError, OracleError
from cotangent_kahler.spaceform import (
    SpaceFormParams,
    christoffel_at,
    christoffel_fd_oracle,
    conformal_factor,
    evaluate,
    metric_at,
    riemann_at,
    sample_base_point,
    sectional_curvature,
    warn_if_low_dimension,
)

curvatures = st.sampled_from([-1.0, -0.5, 0.0, 0.5, 1.0])
points3 = arrays(np.float64, 3, elements=st.floats(-0.55, 0.55))


def metric_gradient(x, params):
    """Closed-form d_l g_ij for the conformal chart."""
    F = conformal_factor(x, params)
    dF = 0.5 * params.c * np.asarray(x)
    return np.einsum("l,ij->lij", -2.0 * dF / F**3, np.eye(params.n))


class TestSpaceFormParams:
    def test_rejects_dimension_one(self):
        with pytest.raises(InputError):
            SpaceFormParams(1, -1.0)

    def test_low_dimension_flag(self):
        assert SpaceFormParams(2, 1.0).low_dimension_warning
        assert not SpaceFormParams(3, 1.0).low_dimension_warning
        with pytest.warns(UserWarning):
            warn_if_low_dimension(SpaceFormParams(2, 1.0))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            warn_if_low_dimension(SpaceFormParams(3, 1.0))

    def test_default_radius(self):
        assert SpaceFormParams(3, -1.0).default_radius() == 1.0
        assert SpaceFormParams(3, 4.0).default_radius() == pytest.approx(0.5)

    def test_outside_chart(self):
        with pytest.raises(DomainError):
            metric_at([2.0, 0.0], SpaceFormParams(2, -1.0))

    def test_wrong_shape(self):
        with pytest.raises(InputError):
            metric_at([0.1, 0.2, 0.3], SpaceFormParams(2, -1.0))


class TestMetric:
    @pytest.mark.parametrize("c", [-1.0, 0.0, 1.0])
    def test_origin_is_euclidean(self, c):
        g, g_inv = metric_at(np.zeros(3), SpaceFormParams(3, c))
        np.testing.assert_array_equal(g, np.eye(3))
        np.testing.assert_array_equal(g_inv, np.eye(3))

    def test_flat_everywhere(self):
        g, _ = metric_at([0.4, -2.0, 7.0], SpaceFormParams(3, 0.0))
        np.testing.assert_array_equal(g, np.eye(3))

    def test_hyperbolic_value(self):
        g, g_inv = metric_at([1.0, 0.0], SpaceFormParams(2, -1.0))
        np.testing.assert_allclose(g, 16.0 / 9.0 * np.eye(2), rtol=1e-15)
        np.testing.assert_allclose(g @ g_inv, np.eye(2), atol=1e-12)

    @given(curvatures, points3)
    def test_inverse_and_positive(self, c, x):
        g, g_inv = metric_at(x, SpaceFormParams(3, c))
        np.testing.assert_allclose(g @ g_inv, np.eye(3), atol=1e-12)
        np.linalg.cholesky(g)


class TestChristoffel:
    @pytest.mark.parametrize("c", [-1.0, 0.0, 1.0])
    def test_zero_at_origin(self, c):
        assert np.all(christoffel_at(np.zeros(3), SpaceFormParams(3, c)) == 0)

    def test_zero_when_flat(self):
        assert np.all(christoffel_at([0.3, 1.0, -2.0], SpaceFormParams(3, 0.0)) == 0)

    def test_matches_fd_oracle(self):
        params = SpaceFormParams(2, -1.0)
        x = np.array([1.0, 0.0])
        np.testing.assert_allclose(christoffel_fd_oracle(x, params), christoffel_at(x, params), atol=1e-6)

    def test_fd_oracle_flat_and_origin(self):
        assert np.max(np.abs(christoffel_fd_oracle([0.3, 0.2], SpaceFormParams(2, 0.0)))) < 1e-15
        assert np.max(np.abs(christoffel_fd_oracle([0.0, 0.0], SpaceFormParams(2, -1.0)))) < 1e-9

    def test_richardson_ratio(self):
        params = SpaceFormParams(3, -1.0)
        x = np.array([0.5, -0.3, 0.4])
        exact = christoffel_at(x, params)
        e1 = np.max(np.abs(christoffel_fd_oracle(x, params, 1e-5) - exact))
        e2 = np.max(np.abs(christoffel_fd_oracle(x, params, 2e-5) - exact))
        assert e2 / e1 == pytest.approx(4.0, rel=0.1)

    def test_oracle_refuses_near_chart_edge(self):
        with pytest.raises(OracleError):
            christoffel_fd_oracle([1.99999999, 0.0], SpaceFormParams(2, -1.0), h=1e-3)

    @given(curvatures, points3)
    def test_symmetric_lower_indices(self, c, x):
        gam = christoffel_at(x, SpaceFormParams(3, c))
        np.testing.assert_allclose(gam, gam.transpose(0, 2, 1), atol=1e-15)

    @given(curvatures, points3)
    def test_metric_is_parallel(self, c, x):
        params = SpaceFormParams(3, c)
        g, _ = metric_at(x, params)
        gam = christoffel_at(x, params)
        res = metric_gradient(x, params) - np.einsum("mli,mj->lij", gam, g) - np.einsum("mlj,im->lij", gam, g)
        assert np.max(np.abs(res)) < 1e-9


class TestRiemann:
    def test_flat(self):
        assert np.all(riemann_at([0.2, 0.1, 0.0], SpaceFormParams(3, 0.0)) == 0)

    @pytest.mark.parametrize("c", [-1.0, 2.0])
    def test_origin(self, c):
        e = np.eye(3)
        expected = c * (np.einsum("hi,jk->hkij", e, e) - np.einsum("hj,ik->hkij", e, e))
        np.testing.assert_allclose(riemann_at(np.zeros(3), SpaceFormParams(3, c)), expected)

    def test_identity_matches_fd(self, rng):
        params = SpaceFormParams(3, 1.0)
        x = sample_base_point(params, rng)
        diff = riemann_at(x, params) - riemann_at(x, params, method="fd")
        assert np.max(np.abs(diff)) < 1e-4

    @given(curvatures, points3)
    def test_first_bianchi(self, c, x):
        R = riemann_at(x, SpaceFormParams(3, c))  # R[h, k, i, j]
        cyc = R + np.einsum("hjki->hkij", R) + np.einsum("hijk->hkij", R)
        assert np.max(np.abs(cyc)) < 1e-9

    @pytest.mark.parametrize("c", [-1.0, 0.5])
    def test_sectional_curvature_is_c(self, c, rng):
        params = SpaceFormParams(3, c)
        x = sample_base_point(params, rng)
        ev = evaluate(x, params)
        R_fd = riemann_at(x, params, method="fd")
        X, Y = rng.normal(size=3), rng.normal(size=3)
        assert sectional_curvature(ev.riemann, ev.g, X, Y) == pytest.approx(c, rel=1e-12)
        assert sectional_curvature(R_fd, ev.g, X, Y) == pytest.approx(c, rel=1e-6)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            riemann_at([0.0, 0.0], SpaceFormParams(2, 1.0), method="spectral")


class TestSampling:
    def test_inside_radius(self, rng):
        params = SpaceFormParams(4, 4.0)
        for _ in range(50):
            assert np.linalg.norm(sample_base_point(params, rng)) <= 0.5
