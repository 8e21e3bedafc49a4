"""
Tests for the Sobolev orthogonal basis, Sobolev expansions and the
simultaneous approximant.
"""

import numpy as np
import pytest

from src.config import get_settings
from src.exceptions import CapExceeded, IndexRange
from src.jacobi.expansion import expand, vallee_poussin
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn
from src.jacobi.sobolev import (
    SobolevConfig,
    approximant_V,
    cJ,
    closed_form_check,
    sobolev_expand,
    sobolev_gram,
    sobolev_h,
    sobolev_inner,
    sobolev_partial_sum,
    taylor_remainder_error,
)
from src.jacobi.special import jacobi_J

X = Fn.from_poly(Poly(np.array([0.0, 1.0])), label="x")


class TestSobolevConfig:
    """Test configuration validation."""

    def test_defaults(self):
        """Test the default configuration and its unit point weights."""
        cfg = SobolevConfig()
        assert (cfg.s, cfg.theta) == (1, -1.0)
        assert cfg.weights == (1.0,)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"s": 0},
            {"theta": 1.5},
            {"s": 2, "lambdas": (1.0,)},
            {"s": 1, "lambdas": (0.0,)},
            {"params": Params(-1.5, 0.0)},
        ],
    )
    def test_invalid(self, kwargs: dict):
        """Test invalid configurations are rejected."""
        with pytest.raises(ValueError):
            SobolevConfig(**kwargs)

    def test_s_max(self):
        """Test the derivative order cap."""
        with pytest.raises(ValueError):
            SobolevConfig(s=get_settings().s_max + 1)


class TestBasis:
    """Test the polynomials cJ_n."""

    def test_low_index_is_taylor_monomial(self):
        """Test cJ_n = (x - theta)^n / n! for n < s."""
        cfg = SobolevConfig(s=3, theta=0.0)
        assert float(cJ(2, cfg)(1.0)) == pytest.approx(0.5)

    def test_derivative_is_jacobi(self, sobolev_cfg: SobolevConfig, grid: np.ndarray):
        """Test d^s cJ_n = J_{n-s}."""
        for n in range(2, 15):
            lhs = cJ(n, sobolev_cfg).deriv(2)(grid)
            rhs = jacobi_J(n - 2, sobolev_cfg.params, grid)
            assert float(np.max(np.abs(lhs - rhs))) < 1e-10 * max(1.0, float(np.max(np.abs(rhs))))

    def test_anchor_conditions(self, sobolev_cfg: SobolevConfig):
        """Test derivatives of order < s vanish at theta for n >= s."""
        at = np.array([sobolev_cfg.theta])
        for n in range(2, 10):
            q = cJ(n, sobolev_cfg)
            for k in range(2):
                assert abs(float(q.deriv(k)(at)[0])) < 1e-12

    def test_cap(self, sobolev_cfg: SobolevConfig):
        """Test materializing beyond n_max is refused."""
        with pytest.raises(CapExceeded):
            cJ(get_settings().n_max + 1, sobolev_cfg)

    @pytest.mark.parametrize("theta", [-1.0, 0.0, 0.4, 1.0])
    def test_gram_is_diagonal(self, theta: float):
        """Test orthogonality and the diagonal lambda_n / h_{n-s}."""
        cfg = SobolevConfig(s=2, theta=theta, params=Params(0.5, 0.0), lambdas=(2.0, 3.0))
        gram = sobolev_gram(8, cfg)
        diag = np.array([sobolev_h(n, cfg) for n in range(9)])
        scale = float(np.max(np.abs(np.diag(gram))))
        off = gram - np.diag(np.diag(gram))
        assert float(np.max(np.abs(off))) < 1e-9 * scale
        np.testing.assert_allclose(np.diag(gram), diag, rtol=1e-9)

    def test_point_weights(self):
        """Test sobolev_h returns lambda_n below s."""
        cfg = SobolevConfig(s=2, lambdas=(2.0, 3.0))
        assert sobolev_h(1, cfg) == 3.0


class TestInnerProduct:
    """Test the Sobolev inner product."""

    def test_constants(self):
        """Test <1, 1> = lambda_0 when s = 1."""
        one = Fn.constant(1.0)
        assert sobolev_inner(one, one, SobolevConfig(), 8) == pytest.approx(1.0)

    def test_x(self):
        """Test <x, x> = int 1 dx = 2 when theta = 0."""
        assert sobolev_inner(X, X, SobolevConfig(theta=0.0), 8) == pytest.approx(2.0)


class TestSobolevExpansion:
    """Test Sobolev coefficients and partial sums."""

    def test_reproduces_polynomials(self, sobolev_cfg: SobolevConfig, cubic: Fn, grid: np.ndarray):
        """Test calS_n reproduces polynomials of degree <= n."""
        ser = sobolev_expand(cubic, 6, sobolev_cfg)
        assert ser.N == 6
        assert ser.coeffs.size == 7
        for n in (3, 6):
            np.testing.assert_allclose(sobolev_partial_sum(ser, n)(grid), cubic(grid), atol=1e-12)

    def test_expand_basis_element(self, sobolev_cfg: SobolevConfig):
        """Test cJ_5 expands to a unit coefficient vector."""
        f = Fn.from_poly(cJ(5, sobolev_cfg))
        coeffs = sobolev_expand(f, 8, sobolev_cfg).coeffs
        expected = np.zeros(9)
        expected[5] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-11)

    def test_taylor_case(self, exp_fn: Fn, sobolev_cfg: SobolevConfig):
        """Test n < s gives the Taylor polynomial at theta."""
        ser = sobolev_expand(exp_fn, 6, sobolev_cfg)
        q = sobolev_partial_sum(ser, 1)
        e = np.exp(-1.0)
        assert float(q(0.0)) == pytest.approx(e + e * 1.0)

    def test_index_checks(self, exp_fn: Fn, sobolev_cfg: SobolevConfig):
        """Test N >= s and n <= N."""
        with pytest.raises(IndexRange):
            sobolev_expand(exp_fn, 1, sobolev_cfg)
        ser = sobolev_expand(exp_fn, 4, sobolev_cfg)
        with pytest.raises(IndexRange):
            sobolev_partial_sum(ser, 5)


class TestApproximant:
    """Test the simultaneous approximant."""

    def test_reproduces_polynomials(self, sobolev_cfg: SobolevConfig, cubic: Fn, grid: np.ndarray):
        """Test calV_n reproduces polynomials of degree <= n."""
        q = approximant_V(cubic, 4, sobolev_cfg)
        np.testing.assert_allclose(q(grid), cubic(grid), atol=1e-12)
        errors = taylor_remainder_error(cubic, q, sobolev_cfg, 2.0, 32)
        assert float(np.max(errors)) < 1e-11

    def test_taylor_data_at_anchor(self, exp_fn: Fn, sobolev_cfg: SobolevConfig):
        """Test derivatives of order < s match f at theta."""
        q = approximant_V(exp_fn, 8, sobolev_cfg)
        at = np.array([sobolev_cfg.theta])
        for k in range(2):
            assert float(q.deriv(k)(at)[0]) == pytest.approx(np.exp(-1.0), rel=1e-12)

    def test_intertwining(self, exp_fn: Fn, sobolev_cfg: SobolevConfig, grid: np.ndarray):
        """Test d^s calV_n f = V_n f^(s)."""
        n = 6
        q = approximant_V(exp_fn, n, sobolev_cfg)
        v = vallee_poussin(expand(exp_fn.diff(2), 2 * n, sobolev_cfg.params), n)
        np.testing.assert_allclose(q.deriv(2)(grid), v(grid), atol=1e-10)

    def test_errors_decrease(self, runge_fn: Fn):
        """Test every derivative error drops as n grows."""
        cfg = SobolevConfig(s=1, theta=-1.0)
        small = taylor_remainder_error(runge_fn, approximant_V(runge_fn, 8, cfg), cfg, 2.0, 256)
        large = taylor_remainder_error(runge_fn, approximant_V(runge_fn, 32, cfg), cfg, 2.0, 256)
        assert np.all(large < small)

    def test_cap(self, exp_fn: Fn, sobolev_cfg: SobolevConfig):
        """Test the approximant degree 2n + s is capped."""
        with pytest.raises(CapExceeded):
            approximant_V(exp_fn, get_settings().n_max // 2, sobolev_cfg)


class TestClosedForm:
    """Test the closed form of cJ_n at theta = 1, alpha = 0."""

    def test_corrected_form_holds(self):
        """Test the (1-x)^s J_{n-s}^{s,b-s} form."""
        for n, s in ((5, 2), (6, 1), (7, 3)):
            corrected, _ = closed_form_check(n, s, 0.5)
            assert corrected < 1e-9

    def test_uncorrected_form_fails(self):
        """Test the J_{n-s}^{0,b} form is not an identity."""
        _, uncorrected = closed_form_check(5, 2, 0.5)
        assert uncorrected > 1e-3

    def test_needs_n_at_least_s(self):
        """Test n >= s is required."""
        with pytest.raises(IndexRange):
            closed_form_check(1, 2, 0.5)
