"""
Rate-reproduction studies at desk scale: boundedness of the simultaneous
approximation ratio, the derivative-order gap of the fitted slopes, the
suboptimality of the plain partial sum and the shifted-norm growth.

Not part of the "all" group; run with `verify rates`.
"""

from src.config import get_settings
from src.experiments.rates import (
    fit_slope,
    h_ratio_study,
    operator_degree,
    run_rates,
    slope_gap_errors,
    suboptimality_study,
)
from src.jacobi.poly import Params
from src.jacobi.sobolev import SobolevConfig
from src.logging_config import get_logger
from src.verify.suite import Check, SuiteContext

SUITE_NAME = "rates"
GROUP = "rates"
SEED_OFFSET = 8

DYADIC = (8, 16, 32, 64, 128)
SUBOPTIMAL_NS = (8, 16, 32, 64)
RATIO_BAND = 0.1
# gamma - s for the derivative-gap family; gamma = s + 0.75 gains about two
# orders per derivative at the endpoint, while s + 2.75 shows the unit gap
GAP_OFFSET = 2.75

logger = get_logger(__name__)


def _feasible(operator: str, s: int) -> list[int]:
    n_max = get_settings().n_max
    return [n for n in DYADIC if operator_degree(operator, n, s) <= n_max]


def _boundedness() -> list[Check]:
    settings = get_settings()
    checks = []
    for s in (1, 2):
        fid = f"endpoint:{s + 0.75:g}"
        for theta in (-1.0, 0.4):
            cfg = SobolevConfig(s=s, theta=theta)
            report = run_rates(fid, cfg, "calV", _feasible("calV", s))
            ratios = report.sobolev_ratios
            slope, _ = fit_slope(report.ns, ratios)
            name = f"{fid} s={s} theta={theta:g}"
            band = settings.ratio_slope_band
            checks += [
                Check.within(f"W^s ratio slope {name}", slope, -band, band),
                Check.at_most(f"W^s ratio max {name}", float(ratios.max()), settings.ratio_bound),
            ]
    return checks


def _k_gap() -> list[Check]:
    tolerance = get_settings().slope_tolerance
    checks = []
    params = Params(0.5, 0.0)
    for operator in ("calV", "calS"):
        for s in (1, 2):
            fid = f"endpoint:{s + GAP_OFFSET:g}"
            cfg = SobolevConfig(s=s, theta=-1.0, params=params)
            report = run_rates(fid, cfg, operator, _feasible(operator, s))
            for (k, kp), err in slope_gap_errors(report).items():
                name = f"slope_{k} - slope_{kp} - {k - kp} {operator} {fid}"
                checks.append(Check.within(name, err, -tolerance, tolerance))
                logger.debug("Slope gap measured", operator=operator, fid=fid, k=k, kp=kp, err=err)
    return checks


def _suboptimality() -> list[Check]:
    threshold = get_settings().growth_threshold
    checks = []
    cfg = SobolevConfig(s=1, theta=-1.0)
    for fid in ("runge", "endpoint:2.25"):
        study = suboptimality_study(fid, Params(), 1, SUBOPTIMAL_NS)
        growth = study.ratio_slopes[1]
        smoothed = run_rates(fid, cfg, "calV", SUBOPTIMAL_NS).ratio_slopes[1]
        if fid == "runge":
            checks += [
                Check.at_least(f"S_n derivative ratio growth {fid}", growth, threshold),
                Check.at_most(f"V_n derivative ratio slope {fid}", smoothed, RATIO_BAND),
                Check.at_least(f"S_n minus V_n ratio slope {fid}", growth - smoothed, threshold),
            ]
        else:
            checks.append(Check.report(f"S_n derivative ratio growth {fid}", growth))
            checks.append(Check.report(f"V_n derivative ratio slope {fid}", smoothed))
    return checks


def _h_ratios() -> list[Check]:
    checks = []
    for m in (1, 2):
        study = h_ratio_study(m, Params(), [16, 32, 64, 128])
        checks.append(Check.report(f"h^(a+{m},b+{m}) / h slope", study.bounded_slope))
        name = f"||J^(a+{m},b+{m})||^2 / h slope (expect {2 * m - 1})"
        checks.append(Check.report(name, study.growth_slope))
    return checks


def run(ctx: SuiteContext) -> list[Check]:
    return [*_boundedness(), *_k_gap(), *_suboptimality(), *_h_ratios()]
