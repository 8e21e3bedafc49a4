"""
Concurrent execution of invariant suites.

The SuiteRunner keeps a registry of suite callables, runs the selected ones in
worker threads (the numerics are blocking numpy/scipy calls), bounds the
concurrency with a semaphore and records a SuiteResult for each.
"""

import asyncio
from dataclasses import dataclass
from typing import Callable, Optional

from src.config import Settings, get_settings
from src.logging_config import get_logger
from src.verify.suite import SuiteContext, SuiteFn, SuiteResult, SuiteStatus

logger = get_logger(__name__)

# Groups selectable from the command line; "all" excludes the slow rate studies
GROUPS: dict[str, tuple[str, ...]] = {
    "core": ("core",),
    "connection": ("connection",),
    "sobolev": ("sobolev",),
    "duality": ("duality",),
    "rates": ("rates",),
    "all": ("core", "connection", "sobolev", "duality"),
}


@dataclass(frozen=True)
class RegisteredSuite:
    name: str
    group: str
    fn: SuiteFn


class SuiteRunner:
    """
    Runs registered suites concurrently and collects their results.

    Attributes:
        context: Seed and flags passed to every suite.
        threads: Maximum number of suites running at once.
        timeout: Per-suite timeout in seconds.

    Example:
        >>> runner = SuiteRunner(SuiteContext(seed=42))
        >>>
        >>> @runner.register_suite("smoke", group="core")
        ... def smoke(ctx):
        ...     return [Check.at_most("zero", 0.0, 1e-12)]
        >>>
        >>> results = asyncio.run(runner.run("core"))
    """

    def __init__(
        self,
        context: Optional[SuiteContext] = None,
        threads: Optional[int] = None,
        timeout: Optional[float] = None,
        settings: Optional[Settings] = None,
    ) -> None:
        self.settings = settings or get_settings()
        self.context = context or SuiteContext(seed=self.settings.seed)
        self.threads = threads or self.settings.threads
        self.timeout = timeout or self.settings.suite_timeout

        # Suite registry: suite_name -> suite
        self._suites: dict[str, RegisteredSuite] = {}

        self._log = logger.bind(
            seed=self.context.seed,
            threads=self.threads,
            literal_h=self.context.literal_h,
        )

    @property
    def suite_names(self) -> list[str]:
        return sorted(self._suites)

    def register_suite(self, name: str, group: str) -> Callable[[SuiteFn], SuiteFn]:
        """Decorator form of add_suite."""

        def decorator(fn: SuiteFn) -> SuiteFn:
            self.add_suite(name, fn, group)
            return fn

        return decorator

    def add_suite(self, name: str, fn: SuiteFn, group: str) -> None:
        """
        Register a suite callable.

        Raises:
            ValueError: If a suite with the same name is already registered.
        """
        if name in self._suites:
            raise ValueError(f"Suite already registered: {name}")
        self._suites[name] = RegisteredSuite(name, group, fn)
        self._log.debug("Registered suite", suite=name, group=group, fn=fn.__name__)

    def select(self, selection: str) -> list[RegisteredSuite]:
        """
        Suites of a group, or the single suite of that name.

        Raises:
            ValueError: If the selection names neither a group nor a suite.
        """
        if selection in GROUPS:
            groups = GROUPS[selection]
            return [self._suites[n] for n in self.suite_names if self._suites[n].group in groups]
        if selection in self._suites:
            return [self._suites[selection]]
        raise ValueError(f"Unknown suite or group: {selection}")

    async def run(self, selection: str = "all") -> list[SuiteResult]:
        """
        Run the selected suites and return their results sorted by name.

        Failures and exceptions are recorded in the results, never raised.
        """
        suites = self.select(selection)
        semaphore = asyncio.Semaphore(self.threads)
        self._log.info("Running suites", selection=selection, suites=[s.name for s in suites])

        async def bounded(suite: RegisteredSuite) -> SuiteResult:
            async with semaphore:
                return await self._run_one(suite)

        gathered = await asyncio.gather(*(bounded(s) for s in suites), return_exceptions=True)

        results = []
        for suite, outcome in zip(suites, gathered):
            if isinstance(outcome, BaseException):
                result = SuiteResult.create(suite.name, suite.group)
                result.mark_running()
                result.mark_error(str(outcome) or type(outcome).__name__)
                outcome = result
            results.append(outcome)
        results.sort(key=lambda r: r.name)

        self._log.info(
            "Suites finished",
            passed=sum(r.ok for r in results),
            total=len(results),
        )
        return results

    async def _run_one(self, suite: RegisteredSuite) -> SuiteResult:
        log = self._log.bind(suite=suite.name, group=suite.group)
        result = SuiteResult.create(suite.name, suite.group)
        result.mark_running()
        log.info("Suite started")
        try:
            checks = await asyncio.wait_for(
                asyncio.to_thread(suite.fn, self.context),
                timeout=self.timeout,
            )
            result.mark_finished(checks)
        except asyncio.TimeoutError:
            log.error("Suite timed out", timeout=self.timeout)
            result.mark_error(f"Suite timed out after {self.timeout}s")
        except Exception as e:
            log.error("Suite raised", error=str(e), exc_info=True)
            result.mark_error(f"{type(e).__name__}: {e}")
        else:
            for check in result.failures:
                log.warning(
                    "Check failed",
                    check=check.name,
                    value=check.value,
                    threshold=check.threshold,
                )
        log.info("Suite completed", status=str(result.status), duration=result.duration)
        return result


def all_passed(results: list[SuiteResult]) -> bool:
    return bool(results) and all(r.status == SuiteStatus.PASSED for r in results)


def format_table(results: list[SuiteResult], verbose: bool = False) -> str:
    """
    Plain-text pass/fail table, one row per suite.

    With verbose=True every check is listed under its suite; otherwise only
    failed checks are.
    """
    width = max([len(r.name) for r in results] + [5])
    lines = [f"{'suite':<{width}}  {'status':<7}  {'checks':>6}  {'failed':>6}"]
    for r in results:
        lines.append(
            f"{r.name:<{width}}  {str(r.status):<7}  {len(r.checks):>6}  {len(r.failures):>6}"
        )
        if r.error:
            lines.append(f"    error: {r.error}")
        for c in r.checks if verbose else r.failures:
            mark = "ok" if c.passed else "FAIL"
            if not c.asserted:
                mark = "info"
            lines.append(f"    [{mark}] {c.name}: {c.value:.3e} (threshold {c.threshold:.3e})")
    verdict = "PASS" if all_passed(results) else "FAIL"
    lines.append(f"{verdict}: {sum(r.ok for r in results)}/{len(results)} suites passed")
    return "\n".join(lines)
