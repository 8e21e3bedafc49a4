"""
Tests for the suite result model and the concurrent runner.

Tests cover:
- Check comparisons and reported-only values
- SuiteResult lifecycle and serialization
- SuiteRunner registration, selection and execution
- Table formatting
"""

import asyncio
import time

import pytest

from src.verify.runner import SuiteRunner, all_passed, format_table
from src.verify.suite import Check, SuiteContext, SuiteResult, SuiteStatus


class TestCheck:
    """Test check records."""

    def test_at_most(self):
        """Test value <= threshold."""
        assert Check.at_most("a", 1e-13, 1e-12).passed
        assert not Check.at_most("a", 1e-11, 1e-12).passed

    def test_nan_never_passes(self):
        """Test NaN values fail every comparison."""
        nan = float("nan")
        assert not Check.at_most("a", nan, 1.0).passed
        assert not Check.at_least("a", nan, 1.0).passed
        assert not Check.within("a", nan, 0.0, 1.0).passed

    def test_within(self):
        """Test the band and its recorded half-width."""
        check = Check.within("slope", 1.1, 0.7, 1.3)
        assert check.passed
        assert check.threshold == pytest.approx(0.3)

    def test_report_is_not_asserted(self):
        """Test reported values never count as failures."""
        check = Check.report("info", 123.0)
        assert not check.asserted
        assert not check.failed
        assert check.to_dict()["threshold"] is None

    def test_failed(self):
        """Test failed needs an asserted, non-passing check."""
        assert Check.at_most("a", 2.0, 1.0).failed
        assert not Check.at_most("a", 2.0, 1.0, asserted=False).failed


class TestSuiteResult:
    """Test the result lifecycle."""

    def test_lifecycle_passed(self):
        """Test pending -> running -> passed."""
        result = SuiteResult.create("quadrature", "core")
        assert result.status == SuiteStatus.PENDING
        assert result.duration is None
        result.mark_running()
        assert result.status == SuiteStatus.RUNNING
        result.mark_finished([Check.at_most("exact", 0.0, 1e-12), Check.report("info", 1.0)])
        assert result.status == SuiteStatus.PASSED
        assert result.ok
        assert result.duration is not None and result.duration >= 0

    def test_lifecycle_failed(self):
        """Test one asserted failure fails the suite."""
        result = SuiteResult.create("quadrature", "core")
        result.mark_running()
        result.mark_finished([Check.at_most("exact", 1.0, 1e-12)])
        assert result.status == SuiteStatus.FAILED
        assert [c.name for c in result.failures] == ["exact"]

    def test_lifecycle_error(self):
        """Test errors are recorded."""
        result = SuiteResult.create("quadrature", "core")
        result.mark_running()
        result.mark_error("boom")
        assert result.status == SuiteStatus.ERROR
        assert result.error == "boom"

    def test_invalid_transitions(self):
        """Test transitions out of order are refused."""
        result = SuiteResult.create("quadrature", "core")
        with pytest.raises(ValueError):
            result.mark_finished([])
        with pytest.raises(ValueError):
            result.mark_error("boom")
        result.mark_running()
        with pytest.raises(ValueError):
            result.mark_running()

    def test_empty_name(self):
        """Test a suite needs a name."""
        with pytest.raises(ValueError):
            SuiteResult.create("", "core")

    def test_json_round_trip(self):
        """Test serialization keeps status, checks and timestamps."""
        result = SuiteResult.create("quadrature", "core")
        result.mark_running()
        result.mark_finished([Check.at_most("exact", 1e-15, 1e-12), Check.report("info", 2.0)])
        restored = SuiteResult.from_json(result.to_json())
        assert restored.status == SuiteStatus.PASSED
        assert restored.started_at == result.started_at
        assert [c.name for c in restored.checks] == ["exact", "info"]
        assert not restored.checks[1].asserted

    def test_status_str(self):
        """Test statuses print as their value."""
        assert str(SuiteStatus.PASSED) == "passed"


class TestSuiteRunner:
    """Test registration, selection and execution."""

    def test_names(self, toy_runner: SuiteRunner):
        """Test registered suites are listed sorted."""
        assert toy_runner.suite_names == ["failing", "passing", "raising"]

    def test_duplicate(self, toy_runner: SuiteRunner):
        """Test a name can be registered once."""
        with pytest.raises(ValueError, match="already registered"):
            toy_runner.add_suite("passing", lambda ctx: [], "core")

    def test_select_groups(self, toy_runner: SuiteRunner):
        """Test "all" leaves out the rate studies."""
        assert [s.name for s in toy_runner.select("all")] == ["failing", "passing"]
        assert [s.name for s in toy_runner.select("rates")] == ["raising"]
        assert [s.name for s in toy_runner.select("passing")] == ["passing"]

    def test_select_unknown(self, toy_runner: SuiteRunner):
        """Test unknown selections are refused."""
        with pytest.raises(ValueError, match="Unknown suite or group"):
            toy_runner.select("nope")

    async def test_run_all(self, toy_runner: SuiteRunner):
        """Test results are sorted and carry their status."""
        results = await toy_runner.run("all")
        assert [(r.name, r.status) for r in results] == [
            ("failing", SuiteStatus.FAILED),
            ("passing", SuiteStatus.PASSED),
        ]
        assert not all_passed(results)

    async def test_exception_becomes_error(self, toy_runner: SuiteRunner):
        """Test a raising suite is recorded, not propagated."""
        (result,) = await toy_runner.run("raising")
        assert result.status == SuiteStatus.ERROR
        assert result.error == "RuntimeError: boom"

    async def test_single_suite_passes(self, toy_runner: SuiteRunner):
        """Test a passing selection."""
        results = await toy_runner.run("core")
        assert all_passed(results)

    async def test_context_reaches_suites(self):
        """Test suites receive the runner's context."""
        runner = SuiteRunner(SuiteContext(seed=11, literal_h=True), threads=1, timeout=10)
        seen: list[SuiteContext] = []

        def record(ctx: SuiteContext) -> list[Check]:
            seen.append(ctx)
            return [Check.at_least("seed", ctx.rng(0).integers(0, 1), 0)]

        runner.add_suite("record", record, "core")
        await runner.run("record")
        assert seen[0].seed == 11 and seen[0].literal_h

    async def test_timeout(self):
        """Test a slow suite is marked as an error."""
        runner = SuiteRunner(SuiteContext(), threads=1, timeout=0.05)
        runner.add_suite("slow", lambda ctx: time.sleep(0.5) or [], "core")
        (result,) = await runner.run("slow")
        assert result.status == SuiteStatus.ERROR
        assert "timed out" in result.error

    def test_run_from_sync_code(self, toy_runner: SuiteRunner):
        """Test the runner works under asyncio.run."""
        results = asyncio.run(toy_runner.run("duality"))
        assert [r.name for r in results] == ["failing"]

    def test_all_passed_empty(self):
        """Test an empty run does not count as passed."""
        assert not all_passed([])


class TestFormatTable:
    """Test the summary table."""

    async def test_failures_listed(self, toy_runner: SuiteRunner):
        """Test failed checks appear under their suite with the verdict line."""
        table = format_table(await toy_runner.run("all"))
        lines = table.splitlines()
        assert lines[0].split() == ["suite", "status", "checks", "failed"]
        assert "[FAIL] large" in table
        assert "info" not in table
        assert lines[-1] == "FAIL: 1/2 suites passed"

    async def test_verbose(self, toy_runner: SuiteRunner):
        """Test verbose lists every check and marks reported values."""
        table = format_table(await toy_runner.run("core"), verbose=True)
        assert "[ok] small" in table
        assert "[info] info" in table
        assert table.endswith("PASS: 1/1 suites passed")

    async def test_error_line(self, toy_runner: SuiteRunner):
        """Test errors are printed under the suite."""
        table = format_table(await toy_runner.run("rates"))
        assert "error: RuntimeError: boom" in table
