"""
Pydantic schemas for the command-line interface.

RunConfig is the validated form of one invocation. Values are layered as
built-in defaults < preset < JSON config file < explicit flags, and every
problem with the merged values is reported in a single aggregated message.
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.config import get_settings
from src.exceptions import UnknownId, UsageError
from src.experiments.rates import OPERATORS
from src.experiments.registry import registry
from src.jacobi.poly import Params
from src.jacobi.sobolev import SobolevConfig
from src.verify.runner import GROUPS

# =============================================================================
# Enums
# =============================================================================


class Command(str, Enum):
    """Subcommands of the CLI."""

    EVAL = "eval"
    QUAD = "quad"
    EXPAND = "expand"
    APPROX = "approx"
    RATES = "rates"
    SUBOPTIMAL = "suboptimal"
    VERIFY = "verify"

    def __str__(self) -> str:
        return self.value


class Preset(str, Enum):
    """Named parameter regimes."""

    SAFE = "safe"
    BETA0 = "beta0"
    ALPHA0 = "alpha0"

    def __str__(self) -> str:
        return self.value


PRESETS: dict[Preset, dict[str, Any]] = {
    Preset.SAFE: {"alpha": 0.0, "beta": 0.0, "theta": -1.0, "s": 1, "pexp": 2.0},
    Preset.BETA0: {"alpha": 0.5, "beta": 0.0, "theta": -1.0},
    Preset.ALPHA0: {"alpha": 0.0, "beta": 0.5, "theta": 1.0},
}

# Fields each subcommand cannot run without
REQUIRED: dict[Command, tuple[str, ...]] = {
    Command.EVAL: ("n", "x"),
    Command.QUAD: ("m",),
    Command.EXPAND: ("fn", "n"),
    Command.APPROX: ("fn", "op", "n"),
    Command.RATES: ("fn", "op", "ns"),
    Command.SUBOPTIMAL: ("fn", "ns"),
    Command.VERIFY: (),
}


# =============================================================================
# Run configuration
# =============================================================================


class RunConfig(BaseModel):
    """
    Validated configuration of one CLI invocation.

    Attributes:
        command: Subcommand to run.
        alpha, beta: Jacobi weight exponents.
        s: Derivative order of the Sobolev inner product.
        theta: Anchor point in [-1, 1].
        lambdas: Point-term weights; defaults to all ones.
        pexp: Exponent p of the error norms.
        n, m, r: Degree, quadrature order and derivative order of a study.
        ns: Degree grid of a rate study.
        x: Evaluation points of `eval`.
        kind: Polynomial family of `eval`.
        fn: Test-function id.
        op: Operator id.
        selection: Suite group or suite name of `verify`.
        out: Output path; stdout when absent.
        seed: Seed of the randomized suites.
        literal_h: Use the h_n normalization without the 4^n factor.
        preset: Regime preset the values started from.
        plot_script: Also write a gnuplot script next to the CSV.
        verbose: List every check in the verify table.
        log_level: Overrides the LOG_LEVEL setting when given.
    """

    model_config = ConfigDict(
        extra="forbid",
        use_enum_values=False,
        json_schema_extra={
            "example": {
                "command": "rates",
                "fn": "endpoint:3.75",
                "op": "calV",
                "ns": [8, 16, 32, 64, 128],
                "alpha": 0.0,
                "beta": 0.0,
                "s": 1,
                "theta": -1.0,
                "pexp": 2.0,
            }
        },
    )

    command: Command
    alpha: float = 0.0
    beta: float = 0.0
    s: int = 1
    theta: float = -1.0
    lambdas: Optional[list[float]] = None
    pexp: float = 2.0
    n: Optional[int] = None
    m: Optional[int] = None
    r: int = 1
    ns: Optional[list[int]] = None
    x: Optional[list[float]] = None
    kind: Literal["P", "J", "Jext"] = "J"
    fn: Optional[str] = None
    op: Optional[str] = None
    selection: str = "all"
    out: Optional[Path] = None
    seed: int = Field(default_factory=lambda: get_settings().seed)
    literal_h: bool = False
    preset: Optional[Preset] = None
    plot_script: bool = False
    verbose: bool = False
    log_level: Optional[Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]] = None

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        """Collect every problem before failing, so one message lists them all."""
        problems = []
        for name in REQUIRED[self.command]:
            if getattr(self, name) is None:
                problems.append(f"{self.command} requires --{name}")

        # eval of the extended family is defined for any real pair
        if not (self.command == Command.EVAL and self.kind == "Jext"):
            if self.alpha <= -1:
                problems.append("alpha must exceed -1")
            if self.beta <= -1:
                problems.append("beta must exceed -1")

        s_max = get_settings().s_max
        if not 1 <= self.s <= s_max:
            problems.append(f"s must be between 1 and {s_max}")
        if not -1.0 <= self.theta <= 1.0:
            problems.append("theta must lie in [-1, 1]")
        if self.lambdas is not None:
            if len(self.lambdas) != self.s:
                problems.append(f"expected {self.s} lambdas, got {len(self.lambdas)}")
            if any(v <= 0 for v in self.lambdas):
                problems.append("lambdas must be positive")
        if self.pexp < 1:
            problems.append("p must be at least 1")

        if self.n is not None and self.n < 0:
            problems.append("n must be non-negative")
        if self.m is not None and self.m < 1:
            problems.append("m must be at least 1")
        if self.r < 1:
            problems.append("r must be at least 1")
        if self.ns is not None and (not self.ns or min(self.ns) < 1):
            problems.append("ns must be a non-empty list of positive degrees")
        if self.x is not None and not self.x:
            problems.append("x must list at least one point")
        if self.op is not None and self.op not in OPERATORS:
            problems.append(f"op must be one of {', '.join(OPERATORS)}")
        if self.fn is not None:
            try:
                registry(self.fn)
            except UnknownId as e:
                problems.append(str(e))
        if self.command == Command.VERIFY and not self.selection:
            problems.append(f"verify needs one of {', '.join(GROUPS)} or a suite name")

        if problems:
            raise ValueError("; ".join(problems))
        return self

    @property
    def params(self) -> Params:
        return Params(self.alpha, self.beta)

    @property
    def sobolev(self) -> SobolevConfig:
        lambdas = tuple(self.lambdas) if self.lambdas is not None else None
        return SobolevConfig(s=self.s, theta=self.theta, params=self.params, lambdas=lambdas)


# =============================================================================
# Layering
# =============================================================================


def load_config_file(path: Path) -> dict[str, Any]:
    """
    Read a JSON object of RunConfig fields.

    Raises:
        UsageError: If the file is missing, unreadable or not a JSON object.
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError("Could not read config file", path=str(path), reason=str(e)) from e
    if not isinstance(data, dict):
        raise UsageError("Config file must hold a JSON object", path=str(path))
    return data


def format_validation_error(error: ValidationError) -> str:
    """All validation problems joined into one line."""
    parts = []
    for item in error.errors():
        where = ".".join(str(loc) for loc in item["loc"])
        message = str(item["msg"]).removeprefix("Value error, ")
        parts.append(f"{where}: {message}" if where else message)
    return "; ".join(parts)


def build_config(
    command: str,
    flags: dict[str, Any],
    preset: Optional[str] = None,
    config_path: Optional[Path] = None,
) -> RunConfig:
    """
    Merge the value layers and validate the result.

    Args:
        command: Subcommand name.
        flags: Values given explicitly on the command line.
        preset: Optional preset name.
        config_path: Optional JSON config file.

    Returns:
        The validated RunConfig.

    Raises:
        UsageError: With one aggregated message if anything is invalid.

    Example:
        >>> cfg = build_config("rates", {"fn": "runge", "op": "calV", "ns": [8, 16]}, "beta0")
        >>> (cfg.alpha, cfg.beta, cfg.theta)
        (0.5, 0.0, -1.0)
    """
    values: dict[str, Any] = {}
    if preset is not None:
        try:
            values.update(PRESETS[Preset(preset)])
        except ValueError as e:
            raise UsageError(f"Unknown preset: {preset}") from e
        values["preset"] = preset
    if config_path is not None:
        values.update(load_config_file(config_path))
    values.update(flags)
    values["command"] = command
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise UsageError(format_validation_error(e)) from e


__all__ = [
    "Command",
    "PRESETS",
    "Preset",
    "RunConfig",
    "build_config",
    "format_validation_error",
    "load_config_file",
]
