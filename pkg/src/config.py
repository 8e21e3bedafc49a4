"""
Configuration module for the Jacobi/Sobolev approximation toolkit.

This module provides configuration settings loaded from environment variables
with sensible defaults. Uses pydantic-settings for validation and type coercion.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    All settings can be overridden by setting the corresponding environment
    variable. Environment variables are case-insensitive.

    Attributes:
        n_max: Degree cap for every polynomial the library materializes.
            Default: 256

        s_max: Largest Sobolev order accepted by SobolevConfig and the CLI.
            Default: 8

        quad_margin: Extra Gauss-Jacobi nodes on top of the expansion degree.
            The default expansion quadrature order is n_max + quad_margin.
            Default: 16

        norm_quad_order: Gauss-Jacobi order used for error norms and for the
            expansions of non-smooth functions in rate studies.
            Default: 2048

        linf_grid: Number of uniform points sampled for L-infinity norms.
            Default: 4096

        panel_tol: Relative tolerance of the adaptive nested integrals.
            Default: 1e-10

        hardy_panels: Outer Gauss-Jacobi order of the Hardy-inequality check;
            its nodes delimit the inner integration panels.
            Default: 64

        dual_quad_order: Starting quadrature order of the adaptive integrals
            behind the dual solutions. The order doubles until two results
            agree to panel_tol.
            Default: 32

        dual_quad_max: Largest order the doubling may reach, also used for
            the pairing integrals of the duality suite.
            Default: 1024

        threads: Number of verification suites run concurrently.
            Default: 4

        suite_timeout: Seconds one suite may run before it is marked failed.
            Default: 600

        seed: Base seed of the randomized suites.
            Default: 42

        hardy_constant: Upper bound on the measured Hardy-inequality ratio.
            Default: 50

        ug_bound: Upper bound on the dual-solution norm ratio of the
            duality suite.
            Default: 50

        ratio_bound: Upper bound on every W^s error ratio of a rate study.
            Default: 100

        slope_tolerance: Allowed deviation of slope_k - slope_k' from k - k'.
            Default: 0.3

        ratio_slope_band: Largest absolute log-log slope of a bounded ratio.
            Default: 0.2

        growth_threshold: Smallest growth slope accepted as suboptimality
            of S_n.
            Default: 0.25

        log_level: Logging level for the application.
            Options: DEBUG, INFO, WARNING, ERROR, CRITICAL
            Default: INFO

        log_timestamps: Prefix log entries with an ISO timestamp.
            Default: True
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Polynomial Configuration
    n_max: int = Field(default=256, ge=8)
    s_max: int = Field(default=8, ge=1)

    # Quadrature Configuration
    quad_margin: int = Field(default=16, ge=0)
    norm_quad_order: int = Field(default=2048, ge=16)
    linf_grid: int = Field(default=4096, ge=2)
    panel_tol: float = Field(default=1e-10, gt=0)
    hardy_panels: int = Field(default=64, ge=1)
    dual_quad_order: int = Field(default=32, ge=4)
    dual_quad_max: int = Field(default=1024, ge=8)

    # Verification Configuration
    threads: int = Field(default=4, ge=1)
    suite_timeout: float = Field(default=600.0, gt=0)  # seconds
    seed: int = 42

    # Acceptance thresholds
    hardy_constant: float = 50.0
    ug_bound: float = 50.0
    ratio_bound: float = 100.0
    slope_tolerance: float = 0.3
    ratio_slope_band: float = 0.2
    growth_threshold: float = 0.25

    # Logging Configuration
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"
    log_timestamps: bool = True

    @property
    def quad_order(self) -> int:
        """Default Gauss-Jacobi order for expansion work."""
        return self.n_max + self.quad_margin


@lru_cache
def get_settings() -> Settings:
    """
    Get cached application settings.

    This function returns a cached Settings instance to avoid
    repeatedly reading environment variables and .env file.

    Returns:
        Settings: The application settings instance.

    Example:
        >>> settings = get_settings()
        >>> print(settings.quad_order)
        272
    """
    return Settings()
