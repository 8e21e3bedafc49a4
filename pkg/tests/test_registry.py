"""
Tests for the test-function registry.
"""

import numpy as np
import pytest

from src.exceptions import UnknownId
from src.experiments.registry import registry
from src.jacobi.poly import Params
from src.jacobi.special import jacobi_J, jacobi_J_extended


class TestRegistry:
    """Test id parsing and the registered functions."""

    def test_exp(self):
        """Test exp and its derivatives."""
        entry = registry("exp")
        assert entry.id == "exp"
        assert float(entry.fn(np.array(0.5))) == pytest.approx(np.exp(0.5))
        assert float(entry.fn.derivative(4)(np.array(0.5))) == pytest.approx(np.exp(0.5))

    def test_runge(self):
        """Test 1/(1+25x^2) and its first derivative."""
        fn = registry("runge").fn
        x = np.array([0.0, 0.2])
        np.testing.assert_allclose(fn(x), [1.0, 0.5], rtol=1e-14)
        assert float(fn.derivative(1)(np.array(0.2))) == pytest.approx(-2.5, rel=1e-13)

    def test_endpoint(self):
        """Test (1-x)^G and its derivative."""
        fn = registry("endpoint:1.75").fn
        assert float(fn(np.array(-1.0))) == pytest.approx(3.363585661015, rel=1e-12)
        assert float(fn.derivative(1)(np.array(0.0))) == pytest.approx(-1.75)

    def test_interior(self):
        """Test |x - X0|^G with its signed derivative."""
        fn = registry("interior:0.5:0").fn
        assert float(fn(np.array(0.25))) == pytest.approx(0.5)
        assert float(fn.derivative(1)(np.array(0.25))) == pytest.approx(1.0)
        assert float(fn.derivative(1)(np.array(-0.25))) == pytest.approx(-1.0)

    def test_jacobi(self, grid: np.ndarray):
        """Test jacobi:N:A:B is the polynomial J_N^{A,B}."""
        fn = registry("jacobi:3:0.5:0").fn
        assert fn.poly is not None
        np.testing.assert_allclose(fn(grid), jacobi_J(3, Params(0.5, 0.0), grid), atol=1e-13)

    def test_sharp(self, grid: np.ndarray):
        """Test sharp:N:A:B:K is J_{N+1}^{A-K,B-K}."""
        fn = registry("sharp:4:0.5:0:1").fn
        expected = jacobi_J_extended(5, Params(-0.5, -1.0))(grid)
        np.testing.assert_allclose(fn(grid), expected, atol=1e-13)

    @pytest.mark.parametrize(
        "fid",
        [
            "nope",
            "exp:1",
            "endpoint",
            "endpoint:x",
            "interior:0.5",
            "jacobi:2.5:0:0",
            "jacobi:-1:0:0",
        ],
    )
    def test_unknown(self, fid: str):
        """Test unknown and malformed ids."""
        with pytest.raises(UnknownId):
            registry(fid)
