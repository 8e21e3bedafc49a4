"""
Report emission: CSV tables, JSON summaries and optional gnuplot scripts.
"""

import csv
import sys
from pathlib import Path
from typing import Optional, TextIO

from src.exceptions import ReportIOError
from src.experiments.rates import RateReport
from src.logging_config import get_logger

logger = get_logger(__name__)

CSV_HEADER = ("fn", "operator", "alpha", "beta", "s", "theta", "p", "n", "k", "error", "ratio")


def fmt(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return f"{value:.17g}"


def write_csv(report: RateReport, stream: TextIO) -> None:
    """Write the report's (n, k) rows; the header is always written."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    head = [
        report.fid,
        report.operator,
        fmt(report.params.alpha),
        fmt(report.params.beta),
        str(report.s),
        fmt(report.theta),
        fmt(report.pexp),
    ]
    for n, k, error, ratio in report.rows():
        writer.writerow([*head, str(n), str(k), fmt(error), fmt(ratio)])


def plot_script(report: RateReport, csv_path: Path) -> str:
    """Gnuplot script drawing error against n for every k, log-log."""
    columns = report.errors.shape[1] if report.errors.size else 0
    plots = ", ".join(
        f"'{csv_path.name}' using 8:($9=={k} ? $10 : 1/0) with linespoints title 'k={k}'"
        for k in range(columns)
    )
    return "\n".join(
        [
            "set datafile separator ','",
            "set key autotitle columnhead",
            "set logscale xy",
            "set xlabel 'n'",
            "set ylabel 'error'",
            f"set title '{report.label}'",
            f"plot {plots}" if plots else "# no data",
            "",
        ]
    )


def emit_report(
    report: RateReport, path: Optional[Path] = None, with_plot: bool = False
) -> Optional[Path]:
    """
    Write the CSV table and a sibling JSON summary.

    With no path the CSV goes to stdout and nothing else is written.

    Args:
        report: The report to write.
        path: CSV destination; the summary goes to path.with_suffix(".json").
        with_plot: Also write path.with_suffix(".gp").

    Returns:
        The JSON path when files were written.

    Raises:
        ReportIOError: If any file cannot be written.
    """
    if path is None:
        write_csv(report, sys.stdout)
        return None
    json_path = path.with_suffix(".json")
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            write_csv(report, fh)
        json_path.write_text(report.to_json() + "\n", encoding="utf-8")
        if with_plot:
            path.with_suffix(".gp").write_text(plot_script(report, path), encoding="utf-8")
    except OSError as exc:
        raise ReportIOError("Could not write report", path=str(path), reason=str(exc)) from exc
    logger.info("Report written", path=str(path), rows=len(report.ns))
    return json_path
