"""
Tests for quadrature rules, functions with derivatives and weighted norms.
"""

import numpy as np
import pytest
from scipy.special import beta as beta_fn
from scipy.special import roots_jacobi

from src.exceptions import MissingDerivative
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import (
    Fn,
    combine_lp,
    gauss_jacobi,
    gauss_legendre,
    hardy_check,
    inner,
    linear_combination,
    linf_points,
    lp_norm,
    wps_norm,
)

X = Poly(np.array([0.0, 1.0]))


class TestFn:
    """Test functions with declared derivatives."""

    def test_exp_derivatives(self, exp_fn: Fn):
        """Test every derivative of exp is exp."""
        assert float(exp_fn.diff(3)(np.array(0.0))) == pytest.approx(1.0)
        assert exp_fn.order == float("inf")

    def test_tuple_derivatives(self):
        """Test derivatives declared as a tuple and the error past them."""
        f = Fn(np.sin, derivatives=(np.cos,), label="sin")
        assert float(f.derivative(1)(np.array(0.0))) == pytest.approx(1.0)
        assert f.order == 1.0
        with pytest.raises(MissingDerivative):
            f.derivative(2)

    def test_constant_broadcasts(self):
        """Test a constant evaluates to an array of the input's shape."""
        values = Fn.constant(2.0)(np.linspace(-1, 1, 5))
        assert values.shape == (5,)
        assert np.all(values == 2.0)

    def test_poly_diff_stays_polynomial(self, cubic: Fn):
        """Test differentiating a polynomial Fn keeps the exact form."""
        d = cubic.diff(1)
        assert d.poly is not None
        assert float(d(np.array(1.0))) == pytest.approx(1.0)

    def test_reflected(self, exp_fn: Fn):
        """Test f(-x) and its derivative."""
        r = exp_fn.reflected()
        assert float(r(np.array(1.0))) == pytest.approx(np.exp(-1.0))
        assert float(r.derivative(1)(np.array(1.0))) == pytest.approx(-np.exp(-1.0))

    def test_linear_combination(self, exp_fn: Fn, cubic: Fn):
        """Test a f + b g and its derivative."""
        h = linear_combination(2.0, exp_fn, -1.0, cubic)
        x = np.array([0.3])
        assert float(h(x)[0]) == pytest.approx(2 * np.exp(0.3) - (0.027 - 0.6 + 1.0))
        assert float(h.derivative(1)(x)[0]) == pytest.approx(2 * np.exp(0.3) - (0.27 - 2.0))


class TestGaussJacobi:
    """Test Golub-Welsch rules."""

    def test_two_point_legendre(self):
        """Test the two-point rule has nodes +-1/sqrt(3)."""
        rule = gauss_legendre(2)
        np.testing.assert_allclose(rule.nodes * np.sqrt(3), [-1.0, 1.0], atol=1e-14)
        np.testing.assert_allclose(rule.weights, [1.0, 1.0], atol=1e-14)

    def test_matches_scipy(self, params: Params):
        """Test nodes and weights against scipy's roots_jacobi."""
        for m in (1, 5, 20):
            nodes, weights = roots_jacobi(m, params.alpha, params.beta)
            rule = gauss_jacobi(m, params)
            np.testing.assert_allclose(rule.nodes, nodes, atol=1e-13)
            np.testing.assert_allclose(rule.weights, weights, rtol=1e-11)

    def test_nodes_and_weights_shape(self, params: Params):
        """Test nodes are increasing inside (-1, 1) and weights are positive."""
        rule = gauss_jacobi(30, params)
        assert np.all(np.diff(rule.nodes) > 0)
        assert rule.nodes[0] > -1 and rule.nodes[-1] < 1
        assert np.all(rule.weights > 0)

    def test_zeroth_moment(self, params: Params):
        """Test weights sum to 2^(a+b+1) B(a+1, b+1)."""
        a, b = params.alpha, params.beta
        expected = 2.0 ** (a + b + 1) * beta_fn(a + 1, b + 1)
        assert gauss_jacobi(7, params).weights.sum() == pytest.approx(expected, rel=1e-13)

    def test_exactness(self):
        """Test an m-point Legendre rule integrates x^k exactly for k <= 2m - 1."""
        rule = gauss_legendre(6)
        for k in range(12):
            expected = 0.0 if k % 2 else 2.0 / (k + 1)
            assert rule.integrate(rule.nodes**k) == pytest.approx(expected, abs=1e-14)

    def test_invalid_inputs(self):
        """Test order and weight validation."""
        with pytest.raises(ValueError):
            gauss_jacobi(0, Params())
        with pytest.raises(ValueError, match="alpha must exceed -1"):
            gauss_jacobi(4, Params(-1.5, 0.0))

    def test_on_interval(self):
        """Test mapping a Legendre rule onto [0, 1]."""
        x, w = gauss_legendre(5).on_interval(0.0, 1.0)
        assert np.all((x > 0) & (x < 1))
        assert float(np.sum(w * x**3)) == pytest.approx(0.25, rel=1e-13)


class TestNorms:
    """Test inner products and weighted norms."""

    def test_inner_legendre(self):
        """Test <x, x> = 2/3 under the Legendre weight."""
        x = Fn.from_poly(X)
        assert inner(x, x, Params(), 4) == pytest.approx(2.0 / 3.0, rel=1e-14)

    def test_lp_norm_two(self):
        """Test ||x||_2 = sqrt(2/3)."""
        assert lp_norm(lambda x: x, 2.0, Params(), 4) == pytest.approx(np.sqrt(2.0 / 3.0))

    def test_lp_norm_inf(self):
        """Test the sup norm includes the endpoints."""
        assert lp_norm(lambda x: x, np.inf, Params(), 8) == pytest.approx(1.0)

    def test_lp_norm_rejects_small_exponent(self):
        """Test p < 1 is refused."""
        with pytest.raises(ValueError):
            lp_norm(lambda x: x, 0.5, Params(), 4)

    def test_combine_lp(self):
        """Test the l^p combination of per-derivative norms."""
        assert combine_lp([3.0, 4.0], 2.0) == pytest.approx(5.0)
        assert combine_lp([3.0, 4.0], np.inf) == 4.0
        assert combine_lp([], 2.0) == 0.0

    def test_wps_norm(self):
        """Test ||x||_{W^1_2} = sqrt(2/3 + 2)."""
        x = Fn.from_poly(X)
        assert wps_norm(x, 1, 2.0, Params(), 4) == pytest.approx(np.sqrt(8.0 / 3.0))

    def test_linf_points_merge_nodes(self):
        """Test the sup-norm grid contains the quadrature nodes."""
        pts = linf_points(5, Params(0.5, 0.0))
        assert np.all(np.isin(gauss_jacobi(5, Params(0.5, 0.0)).nodes, pts))
        assert pts[0] == -1.0 and pts[-1] == 1.0


class TestHardy:
    """Test both sides of the weighted Hardy inequality."""

    def test_constant_exact(self):
        """Test f = 1: lhs = ||x + 1||, rhs = ||1||."""
        lhs, rhs = hardy_check(Fn.constant(1.0), 2.0, Params())
        assert lhs == pytest.approx(np.sqrt(8.0 / 3.0), rel=1e-12)
        assert rhs == pytest.approx(np.sqrt(2.0), rel=1e-12)

    def test_sign_change_uses_absolute_value(self):
        """Test f = x integrates |t|, giving int_{-1}^x |t| dt."""
        lhs, _ = hardy_check(Fn.from_poly(X), 2.0, Params(), m=20)
        rule = gauss_legendre(20)
        x = rule.nodes
        inner_abs = np.where(x < 0, (1 - x**2) / 2, 0.5 + x**2 / 2)
        expected = np.sqrt(rule.integrate(inner_abs**2))
        assert lhs == pytest.approx(expected, rel=1e-10)

    def test_panels_for_non_polynomial(self, exp_fn: Fn):
        """Test adaptive panels against the closed form e^x - e^-1."""
        lhs, rhs = hardy_check(exp_fn, 2.0, Params(), m=16)
        rule = gauss_legendre(16)
        expected = np.sqrt(rule.integrate((np.exp(rule.nodes) - np.exp(-1.0)) ** 2))
        assert lhs == pytest.approx(expected, rel=1e-8)
        assert rhs == pytest.approx(np.sqrt(rule.integrate(np.exp(2 * rule.nodes))), rel=1e-12)

    def test_exponent_range(self):
        """Test pexp must lie in (1, inf)."""
        with pytest.raises(ValueError):
            hardy_check(Fn.constant(1.0), 1.0, Params())
