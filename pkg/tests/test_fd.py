import numpy as np
import pytest

from cotangent_kahler import fd


class TestFiniteDifferences:
    def test_jacobian_linear_map_is_exact(self):
        M = np.arange(6.0).reshape(2, 3)
        J = fd.jacobian(lambda x: M @ x, np.array([0.2, -1.0, 3.0]))
        # derivative axis comes first
        np.testing.assert_allclose(J, M.T, atol=1e-9)

    def test_directional_quadratic(self):
        f = lambda x: x @ x  # noqa: E731
        x, d = np.array([1.0, 2.0]), np.array([0.5, -1.0])
        assert fd.directional(f, x, d) == pytest.approx(2 * x @ d, rel=1e-8)

    @pytest.mark.parametrize("order,expected", [(1, np.cos(0.7)), (2, -np.sin(0.7)), (3, -np.cos(0.7))])
    def test_scalar_derivatives(self, order, expected):
        h = 1e-3 if order == 1 else 1e-2
        assert fd.derivative(np.sin, 0.7, h, order) == pytest.approx(expected, rel=1e-7)

    def test_steps_scale_with_coordinates(self):
        np.testing.assert_allclose(fd.steps(np.array([0.0, -3.0]), 1e-5), [1e-5, 4e-5])
