"""
Convergence-rate studies and rate fitting.

A RateReport holds, for each n of a grid, the derivative errors
||f^(k) - (A_n f)^(k)||_{L^p(w)} (k = 0..s) of an approximation operator A_n,
the reference best-error scale of f^(s), and the fitted log-log slopes.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np
from scipy.stats import linregress

from src.config import get_settings
from src.exceptions import PreconditionViolated, TooFewPoints
from src.jacobi.expansion import (
    Eta,
    best_error_quadrature,
    best_error_surrogate,
    expand,
    partial_sum,
    vallee_poussin,
)
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn, combine_lp, gauss_jacobi, linf_points, lp_norm
from src.jacobi.sobolev import (
    SobolevConfig,
    approximant_V,
    sobolev_expand,
    sobolev_partial_sum,
    taylor_remainder_error,
)
from src.jacobi.special import jacobi_J, jacobi_J_extended, log_h_norm, orthonormal_table
from src.experiments.registry import registry
from src.logging_config import get_logger

logger = get_logger(__name__)

OPERATORS = ("S", "V", "calS", "calV")

# Points count as usable while they exceed this fraction of the largest error
NOISE_FLOOR = 1e-12


# ============================================================================
# Report type
# ============================================================================


@dataclass
class RateReport:
    """
    Errors, reference scales and fitted slopes of one rate study.

    Attributes:
        label: Human-readable description.
        fid: Test-function id.
        operator: One of S, V, calS, calV.
        params: Weight parameters.
        s: Highest derivative order reported.
        theta: Anchor of the Sobolev operators.
        pexp: Norm exponent.
        ns: Degree grid.
        errors: errors[i][k] for n = ns[i].
        references: Best-error scale for each n.
        ratios: errors[i][k] / references[i].
        slopes, stderrs: Fitted log-log slope of errors[:, k] and its error.
        ratio_slopes: Fitted slope of ratios[:, k].
        passed: Acceptance verdict, set by the caller.
    """

    label: str
    fid: str
    operator: str
    params: Params
    s: int
    theta: float
    pexp: float
    ns: list[int] = field(default_factory=list)
    errors: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    references: np.ndarray = field(default_factory=lambda: np.zeros(0))
    ratios: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    slopes: list[float] = field(default_factory=list)
    stderrs: list[float] = field(default_factory=list)
    ratio_slopes: list[float] = field(default_factory=list)
    passed: Optional[bool] = None

    @property
    def sobolev_ratios(self) -> np.ndarray:
        """||f - A_n f||_{W_p^s} / reference for each n."""
        pairs = zip(self.errors, self.references)
        return np.array([combine_lp(list(row), self.pexp) / ref for row, ref in pairs])

    def rows(self) -> list[tuple[int, int, float, float]]:
        """(n, k, error, ratio) sorted by (n, k)."""
        out = []
        for i, n in enumerate(self.ns):
            for k in range(self.errors.shape[1]):
                out.append((n, k, float(self.errors[i, k]), float(self.ratios[i, k])))
        return sorted(out)

    def to_dict(self) -> dict[str, Any]:
        """Summary with NaN slopes mapped to None."""

        def clean(values: Sequence[float]) -> list[Optional[float]]:
            return [None if not math.isfinite(v) else float(v) for v in values]

        return {
            "label": self.label,
            "fn": self.fid,
            "operator": self.operator,
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "s": self.s,
            "theta": self.theta,
            "p": None if math.isinf(self.pexp) else self.pexp,
            "ns": list(self.ns),
            "slopes": clean(self.slopes),
            "stderrs": clean(self.stderrs),
            "ratio_slopes": clean(self.ratio_slopes),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return (
            f"RateReport(label={self.label!r}, operator={self.operator}, "
            f"ns={self.ns}, slopes={[round(v, 3) for v in self.slopes]})"
        )


# ============================================================================
# Slope fitting
# ============================================================================


def usable_run(errs: np.ndarray, scale: Optional[float] = None) -> slice:
    """Longest contiguous run of finite errors above the noise floor."""
    errs = np.asarray(errs, dtype=float)
    finite = np.isfinite(errs) & (errs > 0)
    if scale is None:
        scale = float(np.max(errs[finite])) if np.any(finite) else 0.0
    ok = finite & (errs > NOISE_FLOOR * scale)
    best, start = slice(0, 0), None
    for i, flag in enumerate(np.append(ok, False)):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if i - start > best.stop - best.start:
                best = slice(start, i)
            start = None
    return best


def fit_slope(
    ns: Sequence[float], errs: Sequence[float], scale: Optional[float] = None
) -> tuple[float, float]:
    """
    Least-squares slope of log(errs) against log(ns).

    Raises:
        TooFewPoints: If fewer than three usable points remain.

    Example:
        >>> ns = np.array([8, 16, 32, 64])
        >>> round(fit_slope(ns, ns ** -2.0)[0], 10)
        -2.0
    """
    ns_arr = np.asarray(ns, dtype=float)
    errs_arr = np.asarray(errs, dtype=float)
    run = usable_run(errs_arr, scale)
    if run.stop - run.start < 3:
        raise TooFewPoints("Not enough usable points for a slope", usable=run.stop - run.start)
    fit = linregress(np.log(ns_arr[run]), np.log(errs_arr[run]))
    return float(fit.slope), float(fit.stderr)


def _slopes(ns: Sequence[int], matrix: np.ndarray, what: str) -> tuple[list[float], list[float]]:
    slopes, stderrs = [], []
    for k in range(matrix.shape[1]):
        try:
            slope, stderr = fit_slope(ns, matrix[:, k])
        except TooFewPoints:
            logger.warning("Slope not fitted", column=k, quantity=what)
            slope, stderr = float("nan"), float("nan")
        slopes.append(slope)
        stderrs.append(stderr)
    return slopes, stderrs


def slope_gap_errors(report: RateReport) -> dict[tuple[int, int], float]:
    """(k, k') -> (slope_k - slope_k') - (k - k') for every 0 <= k' < k <= s."""
    return {
        (k, kp): (report.slopes[k] - report.slopes[kp]) - (k - kp)
        for k in range(1, report.s + 1)
        for kp in range(k)
    }


def judge_rates(report: RateReport) -> Optional[bool]:
    """
    Acceptance verdict of a Sobolev-operator rate study.

    Passes when the W^s ratio stays bounded (slope within the band, every
    value under the ratio bound) and every pair of derivative slopes differs
    by k - k' within the slope tolerance. Plain S and V studies and grids too
    short for a fit get None.
    """
    if report.operator not in ("calS", "calV"):
        return None
    settings = get_settings()
    try:
        slope, _ = fit_slope(report.ns, report.sobolev_ratios)
    except TooFewPoints:
        return None
    if not all(math.isfinite(v) for v in report.slopes):
        return None
    bounded = abs(slope) <= settings.ratio_slope_band
    bounded = bounded and float(np.max(report.sobolev_ratios)) <= settings.ratio_bound
    gaps = slope_gap_errors(report).values()
    ordered = all(abs(err) <= settings.slope_tolerance for err in gaps)
    return bool(bounded and ordered)


def judge_suboptimality(report: RateReport) -> Optional[bool]:
    """True when the first-derivative ratio of S_n grows at least at the threshold rate."""
    if len(report.ratio_slopes) < 2 or not math.isfinite(report.ratio_slopes[1]):
        return None
    return report.ratio_slopes[1] >= get_settings().growth_threshold


# ============================================================================
# Studies
# ============================================================================


def operator_degree(operator: str, n: int, s: int) -> int:
    return 2 * n + s if operator == "calV" else (2 * n if operator == "V" else n)


def apply_operator(
    f: Fn,
    operator: str,
    n: int,
    cfg: SobolevConfig,
    order: int,
    eta: Optional[Eta] = None,
) -> Poly:
    """A_n f for A in {S, V, calS, calV}."""
    p = cfg.params
    if operator == "S":
        return partial_sum(expand(f, n, p, order=order), n)
    if operator == "V":
        return vallee_poussin(expand(f, 2 * n, p, order=order), n, eta)
    if operator == "calS":
        return sobolev_partial_sum(sobolev_expand(f, n, cfg, order=order), n)
    if operator == "calV":
        return approximant_V(f, n, cfg, eta, order=order)
    raise ValueError(f"operator must be one of {OPERATORS}, got {operator!r}")


def reference_error(f: Fn, n: int, pexp: float, p: Params, order: int) -> float:
    """E_n(f): L^2 projection error for p = 2, the smoothed-sum surrogate otherwise."""
    if pexp == 2.0:
        return best_error_quadrature(f, n, p, order)
    return best_error_surrogate(f, n, pexp, p, order=order)


def run_rates(
    fid: str,
    cfg: SobolevConfig,
    operator: str,
    ns: Sequence[int],
    pexp: float = 2.0,
    eta: Optional[Eta] = None,
) -> RateReport:
    """
    Derivative errors of A_n f against n, with ratios to E_n(f^(s)).

    The Sobolev partial sum is compared against E_{n-s}(f^(s)), every other
    operator against E_n(f^(s)). Degrees above n_max are skipped with a warning.
    """
    if operator not in OPERATORS:
        raise ValueError(f"operator must be one of {OPERATORS}, got {operator!r}")
    settings = get_settings()
    order = settings.norm_quad_order
    f = registry(fid).fn
    fs = f.diff(cfg.s)
    log = logger.bind(fid=fid, operator=operator, s=cfg.s, theta=cfg.theta)

    kept, rows, refs = [], [], []
    for n in sorted(ns):
        if operator_degree(operator, n, cfg.s) > settings.n_max:
            log.warning("Skipping degree above cap", n=n, n_max=settings.n_max)
            continue
        q = apply_operator(f, operator, n, cfg, order, eta)
        rows.append(taylor_remainder_error(f, q, cfg, pexp, order))
        ref_n = n - cfg.s if operator == "calS" else n
        refs.append(reference_error(fs, max(ref_n, 0), pexp, cfg.params, order))
        kept.append(n)
        log.debug("Rate point computed", n=n, error_s=float(rows[-1][-1]))

    errors = np.array(rows) if rows else np.zeros((0, cfg.s + 1))
    references = np.array(refs)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = errors / references[:, None] if rows else np.zeros_like(errors)
    slopes, stderrs = _slopes(kept, errors, "error")
    ratio_slopes, _ = _slopes(kept, ratios, "ratio")
    return RateReport(
        label=f"{fid} {operator} s={cfg.s} theta={cfg.theta:g} p={pexp:g}",
        fid=fid,
        operator=operator,
        params=cfg.params,
        s=cfg.s,
        theta=cfg.theta,
        pexp=pexp,
        ns=kept,
        errors=errors,
        references=references,
        ratios=ratios,
        slopes=slopes,
        stderrs=stderrs,
        ratio_slopes=ratio_slopes,
    )


def suboptimality_study(fid: str, p: Params, r: int, ns: Sequence[int]) -> RateReport:
    """
    Derivative errors of the plain partial sum, errors[n][k] = ||f^(k) - (S_n f)^(k)||,
    with ratios against E_{n-k}(f^(k)) in L^2(w).

    A growing k = 1 ratio shows that S_n is not a simultaneous approximant.
    """
    order = get_settings().norm_quad_order
    f = registry(fid).fn
    cfg = SobolevConfig(s=max(r, 1), theta=-1.0, params=p)
    rows, ratio_rows, ref_rows = [], [], []
    for n in sorted(ns):
        q = partial_sum(expand(f, n, p, order=order), n)
        errs = np.array(
            [
                lp_norm(lambda x, k=k: f.derivative(k)(x) - q.deriv(k)(x), 2.0, p, order)
                for k in range(r + 1)
            ]
        )
        refs = np.array([best_error_quadrature(f.diff(k), n - k, p, order) for k in range(r + 1)])
        rows.append(errs)
        ref_rows.append(refs)
        ratio_rows.append(errs / refs)
    errors = np.array(rows)
    ratios = np.array(ratio_rows)
    slopes, stderrs = _slopes(list(ns), errors, "error")
    ratio_slopes, _ = _slopes(list(ns), ratios, "ratio")
    return RateReport(
        label=f"{fid} S suboptimality r={r}",
        fid=fid,
        operator="S",
        params=p,
        s=r,
        theta=cfg.theta,
        pexp=2.0,
        ns=sorted(ns),
        errors=errors,
        references=np.array(ref_rows)[:, min(1, r)],
        ratios=ratios,
        slopes=slopes,
        stderrs=stderrs,
        ratio_slopes=ratio_slopes,
    )


def sharpness_identity(n: int, k: int, p: Params) -> float:
    """
    Relative max-grid discrepancy of d^k g - d^k S_n g against J_{n+1-k}^{a+k,b+k}
    for g = J_{n+1}^{a-k,b-k}.

    Raises:
        PreconditionViolated: If n < k + 2.
    """
    if n < k + 2:
        raise PreconditionViolated("Sharpness identity needs n >= k + 2", n=n, k=k)
    g = jacobi_J_extended(n + 1, p.shifted(-k))
    s_n = partial_sum(expand(Fn.from_poly(g), n, p), n)
    grid = linf_points()
    lhs = g.deriv(k)(grid) - s_n.deriv(k)(grid)
    rhs = jacobi_J(n + 1 - k, p.shifted(k), grid)
    return float(np.max(np.abs(lhs - rhs))) / float(np.max(np.abs(rhs)))


@dataclass
class HRatioStudy:
    """
    Growth of norm ratios under a parameter shift by m.

    bounded[i] = h_n^{a+m,b+m} / h_n^{a,b} and
    growth[i] = ||J_n^{a+m,b+m}||^2_{a,b} / h_n^{a,b} for n = ns[i].
    """

    m: int
    params: Params
    ns: list[int]
    bounded: np.ndarray
    growth: np.ndarray
    bounded_slope: float
    growth_slope: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "ns": list(self.ns),
            "bounded": self.bounded.tolist(),
            "growth": self.growth.tolist(),
            "bounded_slope": self.bounded_slope,
            "growth_slope": self.growth_slope,
        }


def h_ratio_study(m: int, p: Params, ns: Sequence[int]) -> HRatioStudy:
    """
    Measure both shift ratios; the second grows like n^(2m-1).

    Norms are formed through the orthonormal family, so no J_n is evaluated.
    """
    q = p.shifted(m)
    bounded, growth = [], []
    for n in ns:
        log_ratio = float(log_h_norm(n, q) - log_h_norm(n, p))
        rule = gauss_jacobi(n + get_settings().quad_margin, p)
        values = orthonormal_table(n, q, rule.nodes)[n]
        bounded.append(np.exp(log_ratio))
        growth.append(np.exp(log_ratio) * rule.integrate(values**2))
    bounded_arr, growth_arr = np.array(bounded), np.array(growth)
    b_slope = float(linregress(np.log(ns), np.log(bounded_arr)).slope)
    g_slope = float(linregress(np.log(ns), np.log(growth_arr)).slope)
    return HRatioStudy(m, p, list(ns), bounded_arr, growth_arr, b_slope, g_slope)
