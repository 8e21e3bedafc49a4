"""
Pytest configuration and fixtures for the approximation toolkit tests.
"""

from typing import Generator

import numpy as np
import pytest
import structlog

from src.config import get_settings
from src.experiments.registry import registry
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn
from src.jacobi.sobolev import SobolevConfig
from src.verify.runner import SuiteRunner
from src.verify.suite import Check, SuiteContext


# ============================================================================
# Settings
# ============================================================================

@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Drop cached settings so environment overrides in a test take effect."""
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def reset_structlog() -> Generator[None, None, None]:
    """Undo configure_logging so no later test logs to a closed capture stream."""
    yield
    structlog.reset_defaults()


# ============================================================================
# Parameters
# ============================================================================

@pytest.fixture(params=[(0.0, 0.0), (0.5, -0.5), (1.0, 0.0), (-0.3, 0.7)], ids=str)
def params(request: pytest.FixtureRequest) -> Params:
    """A small spread of Jacobi weight parameters."""
    return Params(*request.param)


@pytest.fixture
def legendre() -> Params:
    return Params(0.0, 0.0)


@pytest.fixture
def grid() -> np.ndarray:
    """Interior evaluation points."""
    return np.linspace(-0.95, 0.95, 41)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


# ============================================================================
# Functions
# ============================================================================

@pytest.fixture
def exp_fn() -> Fn:
    return registry("exp").fn


@pytest.fixture
def runge_fn() -> Fn:
    return registry("runge").fn


@pytest.fixture
def cubic() -> Fn:
    """x^3 - 2x + 1 as a polynomial Fn."""
    x = Poly(np.array([0.0, 1.0]))
    return Fn.from_poly(x * x * x - x * 2.0 + 1.0, label="cubic")


# ============================================================================
# Sobolev configurations
# ============================================================================

@pytest.fixture
def sobolev_cfg() -> SobolevConfig:
    """s = 2 anchored at -1 with a non-symmetric weight."""
    return SobolevConfig(s=2, theta=-1.0, params=Params(0.5, 0.0))


# ============================================================================
# Runner
# ============================================================================

@pytest.fixture
def toy_runner() -> SuiteRunner:
    """A runner with one passing, one failing and one raising suite."""
    runner = SuiteRunner(SuiteContext(seed=7), threads=2, timeout=30.0)

    @runner.register_suite("passing", group="core")
    def passing(ctx: SuiteContext) -> list[Check]:
        return [Check.at_most("small", 1e-15, 1e-12), Check.report("info", 3.0)]

    @runner.register_suite("failing", group="duality")
    def failing(ctx: SuiteContext) -> list[Check]:
        return [Check.at_most("large", 1.0, 1e-12)]

    @runner.register_suite("raising", group="rates")
    def raising(ctx: SuiteContext) -> list[Check]:
        raise RuntimeError("boom")

    return runner
