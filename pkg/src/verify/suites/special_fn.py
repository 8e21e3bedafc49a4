"""
Special-function invariants: Pochhammer values, Jacobi evaluation, the
derivative identity, leading coefficients, symmetry and orthogonality.
"""

from math import factorial

import numpy as np

from src.jacobi.poly import Params, deriv_poly
from src.jacobi.quadrature import gauss_jacobi, linf_points
from src.jacobi.special import (
    h_norm,
    jacobi_J,
    jacobi_J_extended,
    jacobi_J_poly,
    jacobi_P,
    pochhammer,
)
from src.verify.suite import Check, SuiteContext
from src.verify.suites._common import PARAM_GRID, label, rel_err

SUITE_NAME = "special-fn"
GROUP = "core"
SEED_OFFSET = 1


def _examples(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET)
    xs = rng.uniform(-1.0, 1.0, 5)
    return [
        Check.at_most("pochhammer(3.7, 0) = 1", abs(pochhammer(3.7, 0) - 1.0), 0.0),
        Check.at_most("pochhammer(1, 4) = 24", abs(pochhammer(1.0, 4) - 24.0), 1e-12),
        Check.at_most("pochhammer(0.5, 2) = 0.75", abs(pochhammer(0.5, 2) - 0.75), 1e-15),
        Check.at_most("P_3^(1,0)(1) = 4", abs(float(jacobi_P(3, Params(1, 0), 1.0)) - 4.0), 1e-12),
        Check.at_most("P_2^(0,0)(0) = -1/2", abs(float(jacobi_P(2, Params(), 0.0)) + 0.5), 1e-14),
        Check.at_most("J_1^(0,0)(x) = x", rel_err(jacobi_J(1, Params(), xs), xs), 1e-14),
        Check.at_most(
            "J_2^(0,0)(1) = 1/3", abs(float(jacobi_J(2, Params(), 1.0)) - 1.0 / 3.0), 1e-14
        ),
        Check.at_most("h_0^(1,0) = 2", abs(h_norm(0, Params(1, 0)) - 2.0), 1e-13),
    ]


def _value_at_one() -> list[Check]:
    worst = 0.0
    for p in PARAM_GRID:
        for n in range(21):
            expected = pochhammer(p.alpha + 1.0, n) / factorial(n)
            worst = max(worst, rel_err(jacobi_P(n, p, 1.0), expected))
    return [Check.at_most("P_n(1) = (a+1)_n / n!", worst, 1e-12)]


def _derivative_identity() -> list[Check]:
    grid = linf_points()
    checks = []
    for p in PARAM_GRID:
        worst = 0.0
        for n in range(1, 51):
            lhs = deriv_poly(jacobi_J_poly(n, p))(grid)
            rhs = jacobi_J(n - 1, p.shifted(1), grid)
            worst = max(worst, rel_err(lhs, rhs))
        checks.append(Check.at_most(f"d J_n = J_(n-1)^(a+1,b+1) {label(p)}", worst, 1e-9))
    return checks


def _leading_coefficient() -> list[Check]:
    worst = 0.0
    for p in PARAM_GRID:
        for n in range(31):
            top = jacobi_J_poly(n, p).deriv(n)(np.array([-0.5, 0.0, 0.5]))
            worst = max(worst, float(np.max(np.abs(top - 1.0))))
    return [Check.at_most("d^n J_n = 1", worst, 1e-9)]


def _symmetry() -> list[Check]:
    grid = linf_points()
    worst = 0.0
    for a in (-0.5, 0.0, 0.3, 1.0):
        p = Params(a, a)
        for n in range(31):
            worst = max(worst, rel_err(jacobi_J(n, p, -grid), (-1.0) ** n * jacobi_J(n, p, grid)))
    return [Check.at_most("J_n^(a,a)(-x) = (-1)^n J_n^(a,a)(x)", worst, 1e-12)]


def _orthogonality() -> list[Check]:
    checks = []
    for p in PARAM_GRID:
        rule = gauss_jacobi(32, p)
        table = np.array([jacobi_J(n, p, rule.nodes) for n in range(21)])
        gram = (table * rule.weights) @ table.T
        h = np.array([h_norm(n, p) for n in range(21)])
        scale = np.sqrt(np.outer(h, h))
        off = np.abs(gram - np.diag(np.diag(gram))) / scale
        diag = np.abs(np.diag(gram) - h) / h
        checks.append(Check.at_most(f"Gram off-diagonal {label(p)}", float(np.max(off)), 1e-11))
        checks.append(Check.at_most(f"Gram diagonal = h_n {label(p)}", float(np.max(diag)), 1e-11))
    return checks


def _extended_family() -> list[Check]:
    grid = linf_points()
    worst = 0.0
    for p in PARAM_GRID:
        for n in range(21):
            worst = max(worst, rel_err(jacobi_J_extended(n, p)(grid), jacobi_J(n, p, grid)))
    return [Check.at_most("extended family = J_n for classical parameters", worst, 1e-9)]


def run(ctx: SuiteContext) -> list[Check]:
    return [
        *_examples(ctx),
        *_value_at_one(),
        *_derivative_identity(),
        *_leading_coefficient(),
        *_symmetry(),
        *_orthogonality(),
        *_extended_family(),
    ]
