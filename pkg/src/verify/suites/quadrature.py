"""
Quadrature invariants: closed-form rules, zeroth moments, exactness,
interlacing, norm examples and the weighted Hardy inequality.
"""

import numpy as np

from src.config import get_settings
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn, gauss_jacobi, hardy_check, inner, lp_norm, wps_norm
from src.jacobi.special import jacobi_J_poly, log_h_zero
from src.verify.suite import Check, SuiteContext
from src.verify.suites._common import PARAM_GRID, label, random_poly, rel_err

SUITE_NAME = "quadrature"
GROUP = "core"
SEED_OFFSET = 2

X = Fn.from_poly(Poly(np.array([0.0, 1.0])), label="x")
ONE = Fn.constant(1.0)

HARDY_PARAMS = (Params(0.0, 0.0), Params(0.5, -0.5), Params(-0.5, 0.3), Params(0.0, 1.0))
HARDY_EXPONENTS = (1.5, 2.0, 4.0)


def _closed_forms() -> list[Check]:
    two = gauss_jacobi(2, Params())
    cheb = gauss_jacobi(3, Params(-0.5, -0.5))
    cheb_nodes = np.cos(np.array([5.0, 3.0, 1.0]) * np.pi / 6.0)
    one = gauss_jacobi(1, Params())
    one_err = abs(one.nodes[0]) + abs(one.weights[0] - 2.0)
    legendre_nodes = [-1 / np.sqrt(3), 1 / np.sqrt(3)]
    return [
        Check.at_most("order 1 rule: node 0, weight 2", one_err, 1e-14),
        Check.at_most("Gauss-Legendre m=2 nodes", rel_err(two.nodes, legendre_nodes), 1e-14),
        Check.at_most("Gauss-Legendre m=2 weights", rel_err(two.weights, [1.0, 1.0]), 1e-14),
        Check.at_most("Chebyshev-Gauss m=3 nodes", rel_err(cheb.nodes, cheb_nodes), 1e-14),
        Check.at_most(
            "Chebyshev-Gauss m=3 weights", rel_err(cheb.weights, np.full(3, np.pi / 3)), 1e-13
        ),
    ]


def _moments_and_exactness(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET)
    checks = []
    m = 12
    for p in PARAM_GRID:
        moment = np.exp(log_h_zero(p))
        worst_moment = max(
            rel_err(np.sum(gauss_jacobi(k, p).weights), moment) for k in (1, 5, 20, 64)
        )
        checks.append(Check.at_most(f"sum of weights {label(p)}", worst_moment, 1e-12))

        rule, oracle = gauss_jacobi(m, p), gauss_jacobi(4 * m, p)
        worst = 0.0
        for _ in range(100):
            q = random_poly(rng, 2 * m - 1)
            scale = moment * float(np.sum(np.abs(q.cheb_coeffs)))
            diff = rule.integrate(q(rule.nodes)) - oracle.integrate(q(oracle.nodes))
            worst = max(worst, abs(diff) / scale)
        checks.append(Check.at_most(f"exactness for degree 2m-1 {label(p)}", worst, 1e-12))

        interlaced = True
        for k in (5, 10, 33):
            lo, hi = gauss_jacobi(k, p).nodes, gauss_jacobi(k + 1, p).nodes
            interlaced &= bool(np.all(hi[:-1] < lo) and np.all(lo < hi[1:]))
        checks.append(Check.at_least(f"nodes interlace {label(p)}", float(interlaced), 1.0))
    return checks


def _norms(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET + 100)
    j2, j3 = (Fn.from_poly(jacobi_J_poly(n, Params(0.3, 0.7))) for n in (2, 3))
    j1 = Fn.from_poly(jacobi_J_poly(1, Params()))
    legendre = Params()
    checks = [
        Check.at_most("<1, 1> = 2", abs(inner(ONE, ONE, legendre, 1) - 2.0), 1e-14),
        Check.at_most("<J_2, J_3>_(0.3,0.7) = 0", abs(inner(j2, j3, Params(0.3, 0.7), 8)), 1e-12),
        Check.at_most("<J_1, J_1> = 2/3", abs(inner(j1, j1, legendre, 2) - 2.0 / 3.0), 1e-14),
        Check.at_most(
            "||1||_2 = sqrt 2", abs(lp_norm(ONE, 2.0, legendre, 4) - np.sqrt(2.0)), 1e-14
        ),
        Check.at_most(
            "||x||_2 = sqrt(2/3)", abs(lp_norm(X, 2.0, legendre, 4) - np.sqrt(2.0 / 3.0)), 1e-14
        ),
        Check.at_most("||x||_inf = 1", abs(lp_norm(X, np.inf, Params(0.3, 0.7), 8) - 1.0), 0.0),
        Check.at_most(
            "||1||_(W^1_2) = sqrt 2",
            abs(wps_norm(ONE, 1, 2.0, legendre, 4) - np.sqrt(2.0)),
            1e-14,
        ),
        Check.at_most(
            "||x||_(W^1_2) = sqrt(8/3)",
            abs(wps_norm(X, 1, 2.0, legendre, 4) - np.sqrt(8.0 / 3.0)),
            1e-14,
        ),
    ]
    worst = -np.inf
    for p in PARAM_GRID:
        for _ in range(5):
            f = random_poly(rng, 10)
            ratio = lp_norm(f, 2.0, p.shifted(1), 16) / lp_norm(f, 2.0, p, 16)
            worst = max(worst, ratio)
    checks.append(Check.at_most("L^2 norm shrinks under (a+1, b+1)", worst, 1.0 + 1e-12))
    return checks


def _hardy(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET + 200)
    constant = get_settings().hardy_constant
    lhs, rhs = hardy_check(ONE, 2.0, Params())
    checks = [
        Check.at_most("Hardy lhs for f = 1", abs(lhs - np.sqrt(8.0 / 3.0)), 1e-12),
        Check.at_most("Hardy rhs for f = 1", abs(rhs - np.sqrt(2.0)), 1e-13),
        Check.at_most("Hardy f = 0", sum(hardy_check(Fn.constant(0.0), 2.0, Params())), 0.0),
    ]
    lhs, rhs = hardy_check(Fn.from_poly(jacobi_J_poly(5, Params())), 2.0, Params(0.5, 0.5))
    checks.append(Check.at_most("Hardy ratio J_5, (0.5,0.5)", lhs / rhs, 10.0))

    family = [Fn.from_poly(random_poly(rng, int(rng.integers(0, 9)))) for _ in range(20)]
    for p in HARDY_PARAMS:
        for pexp in HARDY_EXPONENTS:
            ratios = [a / b for a, b in (hardy_check(f, pexp, p) for f in family) if b > 0]
            name = f"Hardy ratio {label(p)} p={pexp:g}"
            if p.beta < pexp - 1.0:
                checks.append(Check.at_most(name, max(ratios), constant))
            else:
                checks.append(Check.report(name, max(ratios)))
    return checks


def run(ctx: SuiteContext) -> list[Check]:
    return [*_closed_forms(), *_moments_and_exactness(ctx), *_norms(ctx), *_hardy(ctx)]
