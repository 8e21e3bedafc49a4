"""
Invariant suites.

Each module defines SUITE_NAME, GROUP and SEED_OFFSET constants and a
run(ctx) function returning a list of Check records.

Available Suites:
    - special_fn, quadrature, fourier_jacobi, h_norm: the "core" group
    - connection, sobolev, duality: one group each
    - rates: the rate-reproduction studies (not part of "all")

Example:
    >>> from src.verify.suites import build_runner
    >>> runner = build_runner()
    >>> runner.suite_names[:3]
    ['connection', 'duality', 'fourier-jacobi']
"""

import importlib
import os
import pkgutil
from typing import Optional

from src.logging_config import get_logger
from src.verify.runner import SuiteRunner
from src.verify.suite import SuiteContext, SuiteFn

logger = get_logger(__name__)


def discover_suites() -> dict[str, tuple[str, SuiteFn]]:
    """
    Find suite modules in this package.

    Modules whose name starts with "_" or that lack SUITE_NAME are skipped.

    Returns:
        Mapping of suite name to (group, run function).
    """
    suites: dict[str, tuple[str, SuiteFn]] = {}
    package_path = os.path.dirname(__file__)

    for _, module_name, is_pkg in pkgutil.iter_modules([package_path]):
        if is_pkg or module_name.startswith("_"):
            continue
        module = importlib.import_module(f"{__name__}.{module_name}")
        suite_name = getattr(module, "SUITE_NAME", None)
        run = getattr(module, "run", None)
        if suite_name is None or run is None:
            logger.debug("Module is not a suite", module=module_name)
            continue
        suites[suite_name] = (module.GROUP, run)

    return suites


def build_runner(
    context: Optional[SuiteContext] = None,
    threads: Optional[int] = None,
    timeout: Optional[float] = None,
) -> SuiteRunner:
    """A SuiteRunner with every discovered suite registered."""
    runner = SuiteRunner(context, threads=threads, timeout=timeout)
    for name, (group, run) in sorted(discover_suites().items()):
        runner.add_suite(name, run, group)
    return runner


__all__ = ["build_runner", "discover_suites"]
