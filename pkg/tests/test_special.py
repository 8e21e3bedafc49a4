"""
Tests for polynomials and the Jacobi special functions.

Tests cover:
- Params validation and helpers
- Chebyshev-basis Poly calculus
- Classical and normalized Jacobi polynomials
- Norm constants and the extended family
"""

import numpy as np
import pytest
from scipy.special import eval_jacobi

from src.config import get_settings
from src.exceptions import CapExceeded, DegenerateRecurrence
from src.jacobi.poly import Params, Poly, chebyshev_extrema, deriv_poly
from src.jacobi.quadrature import gauss_jacobi
from src.jacobi.special import (
    h_norm,
    jacobi_J,
    jacobi_J_extended,
    jacobi_J_poly,
    jacobi_J_value_at_one,
    jacobi_P,
    orthonormal_table,
    pochhammer,
)


class TestParams:
    """Test weight parameters."""

    def test_defaults_are_legendre(self):
        """Test default parameters give the Legendre weight."""
        p = Params()
        assert (p.alpha, p.beta) == (0.0, 0.0)
        assert p.is_weighted

    def test_require_weighted_rejects_alpha(self):
        """Test a non-integrable alpha is rejected with a clear message."""
        with pytest.raises(ValueError, match="alpha must exceed -1"):
            Params(-1.5, 0.0).require_weighted()

    def test_require_weighted_rejects_beta(self):
        """Test a non-integrable beta is rejected."""
        with pytest.raises(ValueError, match="beta must exceed -1"):
            Params(0.0, -1.0).require_weighted()

    def test_swapped_and_shifted(self):
        """Test parameter swap and shift."""
        p = Params(0.5, -0.25)
        assert p.swapped() == Params(-0.25, 0.5)
        assert p.shifted(2) == Params(2.5, 1.75)

    def test_weight_values(self):
        """Test w(x) = (1-x)^a (1+x)^b."""
        p = Params(1.0, 2.0)
        assert p.weight(0.5) == pytest.approx(0.5 * 1.5**2)

    def test_str(self):
        """Test compact string form used in logs."""
        assert str(Params(0.5, 0.0)) == "(0.5,0)"


class TestPoly:
    """Test the Chebyshev-basis polynomial type."""

    def test_derivative_of_x(self):
        """Test d/dx x = 1."""
        x = Poly(np.array([0.0, 1.0]))
        assert float(x.deriv()(0.3)) == pytest.approx(1.0)

    def test_anchored_antiderivative(self):
        """Test the antiderivative vanishes at its anchor."""
        x = Poly(np.array([0.0, 1.0]))
        q = x.integ(anchor=-1.0)
        assert float(q(-1.0)) == pytest.approx(0.0, abs=1e-15)
        assert float(q(1.0)) == pytest.approx(0.0, abs=1e-15)
        assert float(q(0.0)) == pytest.approx(-0.5)

    def test_arithmetic(self):
        """Test products and sums."""
        x = Poly(np.array([0.0, 1.0]))
        q = (x + 1.0) * (x - 1.0)
        assert float(q(0.5)) == pytest.approx(-0.75)
        assert q.degree == 2
        assert float((-q)(0.5)) == pytest.approx(0.75)

    def test_taylor_monomial(self):
        """Test (x - theta)^n / n!."""
        q = Poly.taylor_monomial(3, 0.5)
        assert float(q(1.5)) == pytest.approx(1.0 / 6.0)
        assert float(q(0.5)) == pytest.approx(0.0, abs=1e-15)

    def test_interpolate_recovers_coefficients(self):
        """Test x^3 = (3 T_1 + T_3) / 4."""
        q = Poly.interpolate(lambda x: x**3, 3)
        np.testing.assert_allclose(q.cheb_coeffs, [0.0, 0.75, 0.0, 0.25], atol=1e-14)

    def test_derivative_beyond_degree_is_zero(self):
        """Test differentiating past the degree gives the zero polynomial."""
        q = Poly(np.array([1.0, 2.0]))
        assert q.deriv(3).degree == 0
        assert float(q.deriv(3)(0.2)) == 0.0

    def test_coefficients_are_read_only(self):
        """Test the coefficient vector cannot be mutated."""
        q = Poly(np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            q.cheb_coeffs[0] = 3.0

    def test_chebyshev_extrema_order(self):
        """Test extrema run from 1 down to -1."""
        pts = chebyshev_extrema(4)
        assert pts[0] == pytest.approx(1.0)
        assert pts[-1] == pytest.approx(-1.0)
        assert np.all(np.diff(pts) < 0)


class TestJacobiPolynomials:
    """Test the classical and normalized Jacobi families."""

    def test_pochhammer(self):
        """Test rising factorials."""
        assert pochhammer(0.5, 2) == pytest.approx(0.75)
        assert pochhammer(3.0, 0) == 1.0
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)

    def test_value_at_one(self):
        """Test P_3^{(1,0)}(1) = 4."""
        assert float(jacobi_P(3, Params(1, 0), 1.0)) == pytest.approx(4.0)

    def test_matches_scipy(self, params: Params, grid: np.ndarray):
        """Test the recurrence against scipy's eval_jacobi."""
        for n in range(11):
            expected = eval_jacobi(n, params.alpha, params.beta, grid)
            np.testing.assert_allclose(jacobi_P(n, params, grid), expected, rtol=1e-11, atol=1e-12)

    def test_degenerate_recurrence(self):
        """Test a vanishing recurrence denominator is reported."""
        with pytest.raises(DegenerateRecurrence):
            jacobi_P(2, Params(-1.0, -1.0), 0.5)

    def test_J_leading_coefficient(self, params: Params):
        """Test J_n has leading coefficient 1/n!, so its n-th derivative is 1."""
        for n in range(1, 9):
            top = jacobi_J_poly(n, params).deriv(n)
            assert float(top(0.0)) == pytest.approx(1.0, rel=1e-9)

    def test_derivative_identity(self, params: Params, grid: np.ndarray):
        """Test d/dx J_n^{a,b} = J_{n-1}^{a+1,b+1}."""
        for n in range(1, 16):
            lhs = deriv_poly(jacobi_J_poly(n, params))(grid)
            rhs = jacobi_J(n - 1, params.shifted(1), grid)
            scale = max(1e-300, float(np.max(np.abs(rhs))))
            assert float(np.max(np.abs(lhs - rhs))) / scale < 1e-10

    def test_J_at_one(self):
        """Test J_2^{0,0}(1) = 1/3 and the closed form at x = 1."""
        assert float(jacobi_J(2, Params(0, 0), 1.0)) == pytest.approx(1.0 / 3.0)
        p = Params(0.5, 0.25)
        for m in range(6):
            expected = float(jacobi_J(m, p, 1.0))
            assert jacobi_J_value_at_one(m, p) == pytest.approx(expected, rel=1e-12)

    def test_cap(self):
        """Test materializing beyond n_max is refused."""
        n_max = get_settings().n_max
        with pytest.raises(CapExceeded):
            jacobi_J_poly(n_max + 1, Params())

    def test_extended_matches_classical(self, params: Params, grid: np.ndarray):
        """Test the antiderivative construction agrees with the recurrence."""
        for n in range(8):
            np.testing.assert_allclose(
                jacobi_J_extended(n, params)(grid), jacobi_J(n, params, grid), rtol=1e-9, atol=1e-12
            )

    def test_extended_high_degree(self, params: Params, grid: np.ndarray):
        """Test the extended family stays accurate up to degree 20."""
        for n in (12, 16, 20):
            expected = jacobi_J(n, params, grid)
            scale = float(np.max(np.abs(expected)))
            np.testing.assert_allclose(
                jacobi_J_extended(n, params)(grid), expected, rtol=1e-9, atol=1e-10 * scale
            )

    def test_extended_sharp_derivative(self, grid: np.ndarray):
        """Test J_21^{-1,-1} differentiates into J_20^{0,0} at full precision."""
        q = jacobi_J_extended(21, Params(-1.0, -1.0))
        expected = jacobi_J(20, Params(0.0, 0.0), grid)
        scale = float(np.max(np.abs(expected)))
        np.testing.assert_allclose(q.deriv()(grid), expected, rtol=1e-9, atol=1e-9 * scale)
        assert q(1.0) == pytest.approx(jacobi_J_value_at_one(21, Params(-1.0, -1.0)), abs=1e-12)

    def test_extended_below_minus_one(self, grid: np.ndarray):
        """Test the extended family differentiates into the shifted family."""
        p = Params(-1.5, -1.0)
        q = jacobi_J_extended(4, p)
        np.testing.assert_allclose(
            q.deriv()(grid), jacobi_J_extended(3, p.shifted(1))(grid), rtol=1e-9, atol=1e-12
        )


class TestNorms:
    """Test the h_n normalization."""

    def test_h1_legendre(self):
        """Test h_1^{0,0} = 2/3."""
        assert h_norm(1, Params(0, 0)) == pytest.approx(2.0 / 3.0, rel=1e-13)

    def test_h_against_quadrature(self, params: Params):
        """Test h_n equals the Gauss-Jacobi integral of J_n^2."""
        for n in range(0, 21, 4):
            rule = gauss_jacobi(n + 4, params)
            quad = rule.integrate(jacobi_J(n, params, rule.nodes) ** 2)
            assert h_norm(n, params) == pytest.approx(quad, rel=1e-11)

    def test_literal_h_differs_by_power_of_four(self, params: Params):
        """Test the literal normalization misses exactly a factor 4^n."""
        for n in (1, 5, 10):
            ratio = h_norm(n, params) / h_norm(n, params, literal=True)
            assert ratio == pytest.approx(4.0**n, rel=1e-12)

    def test_orthonormal_table(self, params: Params):
        """Test p_k are orthonormal under the weight."""
        rule = gauss_jacobi(12, params)
        table = orthonormal_table(8, params, rule.nodes)
        gram = (table * rule.weights) @ table.T
        np.testing.assert_allclose(gram, np.eye(9), atol=1e-12)
