"""
Audit of the norm constant h_n against Gauss-Jacobi quadrature.

The quadrature side integrates the classical P_n^2 (whose values stay O(n^a))
and adds the logarithm of the squared J_n scale, so degrees up to 100 are
compared without underflow. With literal_h set, the closed form without the
4^n factor is audited instead, and the suite fails.
"""

import numpy as np

from src.jacobi.poly import Params
from src.jacobi.quadrature import gauss_jacobi
from src.jacobi.special import jacobi_P, log_h_norm, log_j_scale, p_norm_sq
from src.logging_config import get_logger
from src.verify.suite import Check, SuiteContext
from src.verify.suites._common import PARAM_GRID, label

SUITE_NAME = "h-norm"
GROUP = "core"
SEED_OFFSET = 4

N_MAX_AUDIT = 100
LOG4 = float(np.log(4.0))

logger = get_logger(__name__)


def _quadrature_log_h(n: int, p: Params) -> tuple[float, float]:
    """(log of the quadrature value of int P_n^2 w, log h_n from it)."""
    rule = gauss_jacobi(n + 16, p)
    log_p = float(np.log(rule.integrate(jacobi_P(n, p, rule.nodes) ** 2)))
    if n == 0:
        return log_p, log_p
    _, log_scale = log_j_scale(n, p)
    return log_p, log_p + 2.0 * log_scale


def run(ctx: SuiteContext) -> list[Check]:
    checks = [
        Check.at_most("h_0^(0,0) = 2", abs(np.exp(log_h_norm(0, Params())) - 2.0), 1e-14),
        Check.at_most("h_1^(0,0) = 2/3", abs(np.exp(log_h_norm(1, Params())) - 2.0 / 3.0), 1e-14),
    ]
    literal = ctx.literal_h
    for p in PARAM_GRID:
        worst_p = worst_h = 0.0
        factors = []
        for n in range(N_MAX_AUDIT + 1):
            log_p, log_h = _quadrature_log_h(n, p)
            worst_p = max(worst_p, abs(np.expm1(log_p - np.log(p_norm_sq(n, p)))))
            closed = float(log_h_norm(n, p, literal=literal))
            worst_h = max(worst_h, abs(np.expm1(log_h - closed)))
            if n:
                factors.append((log_h - float(log_h_norm(n, p, literal=True))) / (n * LOG4))
        checks.append(Check.at_most(f"int P_n^2 w closed form {label(p)}", worst_p, 1e-11))
        name = f"h_n{' (literal)' if literal else ''} vs quadrature {label(p)}"
        checks.append(Check.at_most(name, worst_h, 1e-11))
        # measured discrepancy of the literal form, in units of log 4^n
        deficit = float(np.mean(factors))
        checks.append(Check.report(f"literal h_n deficit / log 4^n {label(p)}", deficit))
        if literal:
            logger.warning("Literal h_n audited", params=label(p), deviation=worst_h)
    return checks
