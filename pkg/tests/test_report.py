"""
Tests for CSV, JSON and plot-script emission.
"""

import io
import json
from pathlib import Path

import numpy as np
import pytest

from src.exceptions import ReportIOError
from src.experiments.rates import RateReport
from src.experiments.report import CSV_HEADER, emit_report, fmt, plot_script, write_csv
from src.jacobi.poly import Params


@pytest.fixture
def report() -> RateReport:
    errors = np.array([[0.5, 1.0], [0.25, 0.75]])
    references = np.array([1.0, 0.5])
    return RateReport(
        label="runge calV s=1",
        fid="runge",
        operator="calV",
        params=Params(0.5, 0.0),
        s=1,
        theta=-1.0,
        pexp=2.0,
        ns=[8, 16],
        errors=errors,
        references=references,
        ratios=errors / references[:, None],
        slopes=[-1.0, -0.4],
        stderrs=[0.0, 0.0],
        ratio_slopes=[0.0, 0.6],
        passed=False,
    )


@pytest.fixture
def empty_report() -> RateReport:
    return RateReport(
        label="empty",
        fid="exp",
        operator="S",
        params=Params(),
        s=1,
        theta=-1.0,
        pexp=2.0,
        errors=np.zeros((0, 2)),
    )


class TestCsv:
    """Test the CSV table."""

    def test_fmt_round_trips(self):
        """Test 17 significant digits."""
        assert float(fmt(0.1)) == 0.1
        assert fmt(0.5) == "0.5"

    def test_rows(self, report: RateReport):
        """Test one row per (n, k) with the header first."""
        buf = io.StringIO()
        write_csv(report, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 5
        assert lines[1] == "runge,calV,0.5,0,1,-1,2,8,0,0.5,0.5"
        assert lines[4].split(",")[7:] == ["16", "1", "0.75", "1.5"]

    def test_empty_report_has_header(self, empty_report: RateReport):
        """Test a report without rows still writes its header."""
        buf = io.StringIO()
        write_csv(empty_report, buf)
        assert buf.getvalue() == ",".join(CSV_HEADER) + "\n"


class TestEmit:
    """Test report files."""

    def test_stdout(self, report: RateReport, capsys: pytest.CaptureFixture):
        """Test no path prints the CSV and writes nothing."""
        assert emit_report(report) is None
        assert capsys.readouterr().out.startswith("fn,operator")

    def test_files(self, report: RateReport, tmp_path: Path):
        """Test CSV, JSON summary and plot script."""
        path = tmp_path / "rates.csv"
        json_path = emit_report(report, path, with_plot=True)
        assert json_path == tmp_path / "rates.json"
        summary = json.loads(json_path.read_text())
        assert summary["pass"] is False
        assert summary["operator"] == "calV"
        assert path.read_text().count("\n") == 5
        script = (tmp_path / "rates.gp").read_text()
        assert "set logscale xy" in script
        assert "'rates.csv'" in script

    def test_unwritable(self, report: RateReport, tmp_path: Path):
        """Test a missing directory is reported."""
        with pytest.raises(ReportIOError):
            emit_report(report, tmp_path / "missing" / "rates.csv")


class TestPlotScript:
    """Test gnuplot script generation."""

    def test_one_curve_per_derivative(self, report: RateReport):
        """Test each k gets its own curve."""
        script = plot_script(report, Path("out.csv"))
        assert "title 'k=0'" in script and "title 'k=1'" in script

    def test_empty(self, empty_report: RateReport):
        """Test a report without data gets a placeholder."""
        assert "# no data" in plot_script(empty_report, Path("out.csv"))
