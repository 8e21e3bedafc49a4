"""
Tests for rate fitting, rate studies and their acceptance verdicts.
"""

import json
import math

import numpy as np
import pytest

from src.config import get_settings
from src.exceptions import PreconditionViolated, TooFewPoints, UnknownId
from src.experiments.rates import (
    OPERATORS,
    RateReport,
    apply_operator,
    fit_slope,
    h_ratio_study,
    judge_rates,
    judge_suboptimality,
    operator_degree,
    run_rates,
    sharpness_identity,
    slope_gap_errors,
    suboptimality_study,
    usable_run,
)
from src.jacobi.poly import Params
from src.jacobi.quadrature import Fn
from src.jacobi.sobolev import SobolevConfig

NS = [8, 16, 32, 64]


def make_report(operator: str = "calV", slopes: tuple[float, float] = (-4.0, -3.0)) -> RateReport:
    """A two-column report with errors n^-4, n^-3 and reference n^-3."""
    ns = np.array(NS, dtype=float)
    errors = np.column_stack([ns**-4.0, ns**-3.0])
    references = ns**-3.0
    return RateReport(
        label="synthetic",
        fid="exp",
        operator=operator,
        params=Params(),
        s=1,
        theta=-1.0,
        pexp=2.0,
        ns=list(NS),
        errors=errors,
        references=references,
        ratios=errors / references[:, None],
        slopes=list(slopes),
        stderrs=[0.0, 0.0],
        ratio_slopes=[-1.0, 0.0],
    )


class TestSlopeFitting:
    """Test usable runs and log-log slopes."""

    def test_power_law(self):
        """Test n^-2 gives slope -2."""
        ns = np.array(NS, dtype=float)
        slope, stderr = fit_slope(ns, ns**-2.0)
        assert slope == pytest.approx(-2.0)
        assert stderr == pytest.approx(0.0, abs=1e-12)

    def test_noise_floor_cut(self):
        """Test values under the floor end the usable run."""
        errs = np.array([1.0, 0.5, 0.25, 1e-20, 1e-21])
        assert usable_run(errs) == slice(0, 3)

    def test_longest_run(self):
        """Test a non-finite entry splits the run and the longer half wins."""
        errs = np.array([1.0, np.nan, 0.5, 0.4, 0.3, 0.2])
        assert usable_run(errs) == slice(2, 6)

    def test_too_few_points(self):
        """Test fewer than three usable points are refused."""
        with pytest.raises(TooFewPoints):
            fit_slope([8, 16, 32], [1.0, 0.5, 0.0])


class TestOperators:
    """Test operator degrees and application."""

    @pytest.mark.parametrize(
        "operator,expected", [("S", 10), ("V", 20), ("calS", 10), ("calV", 22)]
    )
    def test_degree(self, operator: str, expected: int):
        """Test the polynomial degree each operator produces."""
        assert operator_degree(operator, 10, 2) == expected

    def test_all_reproduce_low_degree(self, cubic: Fn, grid: np.ndarray):
        """Test every operator is exact on a cubic."""
        cfg = SobolevConfig(s=1, theta=0.0, params=Params(0.5, 0.0))
        for operator in OPERATORS:
            q = apply_operator(cubic, operator, 6, cfg, 64)
            np.testing.assert_allclose(q(grid), cubic(grid), atol=1e-11)

    def test_unknown_operator(self, cubic: Fn):
        """Test unknown operator names."""
        with pytest.raises(ValueError):
            apply_operator(cubic, "T", 4, SobolevConfig(), 64)


class TestRateStudies:
    """Test small rate studies end to end."""

    def test_run_rates_shapes(self):
        """Test a short calV study on runge."""
        cfg = SobolevConfig(s=1, theta=-1.0)
        report = run_rates("runge", cfg, "calV", [8, 16, 32])
        assert report.ns == [8, 16, 32]
        assert report.errors.shape == (3, 2)
        assert np.all(report.references > 0)
        np.testing.assert_allclose(report.ratios, report.errors / report.references[:, None])
        assert all(math.isfinite(v) and v < 0 for v in report.slopes)

    def test_run_rates_skips_capped_degrees(self):
        """Test degrees whose approximant exceeds n_max are dropped."""
        cfg = SobolevConfig(s=1, theta=-1.0)
        too_big = get_settings().n_max // 2 + 1
        report = run_rates("runge", cfg, "calV", [8, too_big])
        assert report.ns == [8]

    def test_run_rates_validation(self):
        """Test operator and id checks."""
        with pytest.raises(ValueError):
            run_rates("exp", SobolevConfig(), "T", [8, 16, 32])
        with pytest.raises(UnknownId):
            run_rates("nope", SobolevConfig(), "S", [8, 16, 32])

    def test_suboptimality_grows(self):
        """Test the first-derivative ratio of S_n grows on runge."""
        report = suboptimality_study("runge", Params(), 1, NS)
        assert report.errors.shape == (4, 2)
        assert judge_suboptimality(report) is True

    def test_sharpness_identity(self):
        """Test the derivative error of S_n on an extended Jacobi polynomial."""
        assert sharpness_identity(6, 1, Params(0.5, 0.0)) < 1e-7

    def test_sharpness_needs_large_n(self):
        """Test n >= k + 2."""
        with pytest.raises(PreconditionViolated):
            sharpness_identity(2, 1, Params())

    def test_h_ratio_study(self):
        """Test the shifted norm ratio stays bounded while the mixed one grows."""
        study = h_ratio_study(1, Params(), [16, 32, 64, 128])
        assert abs(study.bounded_slope) < 0.5
        assert 0.7 < study.growth_slope < 1.3
        assert study.to_dict()["m"] == 1


class TestReportType:
    """Test report serialization and verdicts."""

    def test_to_dict_maps_nan(self):
        """Test NaN slopes serialize as null."""
        report = make_report(slopes=(-4.0, float("nan")))
        data = json.loads(report.to_json())
        assert data["slopes"] == [-4.0, None]
        assert data["pass"] is None
        assert data["fn"] == "exp"

    def test_infinite_p_is_null(self):
        """Test p = inf is written as null."""
        report = make_report()
        report.pexp = float("inf")
        assert report.to_dict()["p"] is None

    def test_rows_sorted(self):
        """Test rows run over (n, k)."""
        rows = make_report().rows()
        assert [(n, k) for n, k, _, _ in rows[:3]] == [(8, 0), (8, 1), (16, 0)]

    def test_judge_rates_pass(self):
        """Test bounded ratios and a unit slope gap pass."""
        assert judge_rates(make_report()) is True

    def test_judge_rates_fail(self):
        """Test a derivative converging as fast as the function fails."""
        assert judge_rates(make_report(slopes=(-4.0, -4.5))) is False

    def test_judge_rates_overshoot(self):
        """Test a derivative gap far above one also fails."""
        assert judge_rates(make_report(slopes=(-4.0, -2.0))) is False

    def test_judge_rates_checks_every_pair(self):
        """Test an s = 2 report fails when only the (2, 1) gap is off."""
        report = make_report()
        report.s = 2
        report.slopes = [-5.0, -3.75, -3.25]
        gaps = slope_gap_errors(report)
        assert gaps[(1, 0)] == pytest.approx(0.25)
        assert gaps[(2, 0)] == pytest.approx(-0.25)
        assert gaps[(2, 1)] == pytest.approx(-0.5)
        assert judge_rates(report) is False

    def test_slope_gap_errors_exact(self):
        """Test unit gaps give zero errors for every pair."""
        report = make_report()
        report.s = 2
        report.slopes = [-5.0, -4.0, -3.0]
        assert slope_gap_errors(report) == {(1, 0): 0.0, (2, 0): 0.0, (2, 1): 0.0}

    def test_judge_rates_only_sobolev_operators(self):
        """Test plain operators get no verdict."""
        assert judge_rates(make_report(operator="S")) is None

    def test_judge_rates_nan_slope(self):
        """Test an unfitted slope gives no verdict."""
        assert judge_rates(make_report(slopes=(-4.0, float("nan")))) is None

    @pytest.mark.parametrize(
        "ratio_slopes,expected",
        [([0.0, 0.5], True), ([0.0, 0.1], False), ([0.0], None), ([0.0, float("nan")], None)],
    )
    def test_judge_suboptimality(self, ratio_slopes: list[float], expected):
        """Test the growth threshold on the first-derivative ratio."""
        report = make_report(operator="S")
        report.ratio_slopes = ratio_slopes
        assert judge_suboptimality(report) is expected
