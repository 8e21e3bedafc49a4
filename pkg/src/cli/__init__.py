"""
Command-line interface: argument parsing, RunConfig validation and dispatch.
"""

from src.cli.schemas import RunConfig, build_config

__all__ = ["RunConfig", "build_config"]
