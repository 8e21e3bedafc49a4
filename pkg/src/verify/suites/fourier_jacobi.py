"""
Fourier-Jacobi invariants: coefficients, partial sums, the smoothed operator,
best-error estimates, the commutation and decay-chain inequalities and the
sharpness identity of the plain partial sum.
"""

import numpy as np

from src.experiments.rates import sharpness_identity
from src.experiments.registry import registry
from src.jacobi.expansion import (
    best_error_l2,
    best_error_quadrature,
    best_error_surrogate,
    commute_check,
    decay_chain_bound,
    decay_chain_ratio,
    eta_default,
    expand,
    jackson_ratio,
    partial_sum,
    vallee_poussin,
)
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn, linf_points, lp_norm
from src.jacobi.special import h_norm, jacobi_J_poly
from src.verify.suite import Check, SuiteContext
from src.verify.suites._common import SMALL_GRID, label, random_poly, rel_err

SUITE_NAME = "fourier-jacobi"
GROUP = "core"
SEED_OFFSET = 3

EXP = registry("exp").fn
RUNGE = registry("runge").fn


def _coefficients() -> list[Check]:
    p = Params(0.3, 0.7)
    c = expand(Fn.from_poly(jacobi_J_poly(3, p)), 10, p)
    unit = np.zeros(11)
    unit[3] = 1.0
    x = expand(Fn.from_poly(Poly(np.array([0.0, 1.0]))), 6, Params())
    e = expand(EXP, 30, Params())
    others = float(np.max(np.abs(np.delete(x.coeffs, 1))))
    # decay is stated for the orthonormal coefficients f_k sqrt(h_k)
    tail = float(np.max(np.abs(e.ortho[25:])))
    checks = [
        Check.at_most("expand J_3 = unit vector", float(np.max(np.abs(c.coeffs - unit))), 1e-12),
        Check.at_most("expand x: f_1 = 1", abs(x.coeffs[1] - 1.0), 1e-13),
        Check.at_most("expand x: other coefficients", others, 1e-13),
        Check.at_most("exp orthonormal coefficients beyond 25", tail, 1e-14),
    ]
    fine = expand(EXP, 12, Params())
    shifted = expand(EXP.diff(1), 11, Params(1.0, 1.0))
    shift_err = rel_err(shifted.coeffs[:6], fine.coeffs[1:7])
    checks.append(Check.at_most("coefficient shift of f'", shift_err, 1e-9))
    norm_sq = lp_norm(EXP, 2.0, Params()) ** 2
    checks.append(Check.at_most("Parseval for exp", abs(e.energy - norm_sq) / norm_sq, 1e-8))
    endpoint = registry("endpoint:2.5").fn
    rough = expand(endpoint, 256, Params())
    rough_sq = lp_norm(endpoint, 2.0, Params()) ** 2
    checks.append(Check.at_most("Bessel for endpoint:2.5", rough.energy / rough_sq, 1.0 + 1e-8))
    return checks


def _partial_sums(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET)
    grid = linf_points()
    checks = []
    for p in SMALL_GRID:
        q = random_poly(rng, 6)
        c = expand(Fn.from_poly(q), 12, p)
        exact = q(grid)
        checks += [
            Check.at_most(
                f"S_6 reproduces degree 6 {label(p)}",
                rel_err(partial_sum(c, 6)(grid), exact),
                1e-12,
            ),
            Check.at_most(
                f"V_6 reproduces degree 6 {label(p)}",
                rel_err(vallee_poussin(c, 6)(grid), exact),
                1e-12,
            ),
        ]
        j7 = jacobi_J_poly(7, p)
        s6 = partial_sum(expand(Fn.from_poly(j7), 7, p), 6)
        checks.append(
            Check.at_most(f"S_6 J_7 = 0 {label(p)}", s6.sup_norm(grid) / j7.sup_norm(grid), 1e-12)
        )
        n = 4
        for k in (6, 9):
            jk = jacobi_J_poly(k, p)
            v = vallee_poussin(expand(Fn.from_poly(jk), max(k, 2 * n), p), n)
            expected = float(eta_default(k / n)) * jk(grid)
            checks.append(
                Check.at_most(
                    f"V_4 J_{k} = eta({k}/4) J_{k} {label(p)}",
                    float(np.max(np.abs(v(grid) - expected))) / jk.sup_norm(grid),
                    1e-11,
                )
            )
    return checks


def _eta() -> list[Check]:
    t = np.linspace(1.0, 2.0, 1001)
    return [
        Check.at_most("eta(0.5) = 1", abs(float(eta_default(0.5)) - 1.0), 0.0),
        Check.at_most("eta(3) = 0", abs(float(eta_default(3.0))), 0.0),
        Check.at_most("eta(1.5) = 1/2", abs(float(eta_default(1.5)) - 0.5), 1e-15),
        Check.at_most("eta nonincreasing on [1, 2]", float(np.max(np.diff(eta_default(t)))), 0.0),
    ]


def _best_errors() -> list[Check]:
    p = Params()
    q = Fn.from_poly(jacobi_J_poly(5, p))
    j6 = Fn.from_poly(jacobi_J_poly(6, p))
    parseval = best_error_l2(expand(EXP, 30, p), 5)
    direct = best_error_quadrature(EXP, 5, p)
    e6 = best_error_l2(expand(j6, 12, p), 5)
    checks = [
        Check.at_most("E_5 of degree 5 = 0", best_error_l2(expand(q, 12, p), 5), 1e-12),
        Check.at_most("E_5 J_6 = sqrt h_6", rel_err(e6, np.sqrt(h_norm(6, p))), 1e-10),
        Check.at_most("E_5 exp: Parseval = quadrature", abs(parseval - direct) / direct, 1e-9),
        Check.at_most("surrogate of degree 5 = 0", best_error_surrogate(q, 5, 2.0, p), 1e-12),
    ]
    for fid in ("exp", "runge", "endpoint:2.5", "interior:1.5:0.3", "jacobi:12:0:0"):
        f = registry(fid).fn
        best = best_error_quadrature(f, 8, p)
        ratio = best_error_surrogate(f, 8, 2.0, p) / best
        # V_8 has degree 16, so the ratio may drop below 1
        checks.append(Check.at_most(f"surrogate / E_8 for {fid}", ratio, 4.0))
    absx = registry("interior:1:0").fn
    sup = [best_error_surrogate(absx, n, np.inf, p) for n in (8, 16, 32)]
    checks.append(Check.at_most("|x| sup surrogate decreasing", float(np.max(np.diff(sup))), 0.0))
    return checks


def _commutation() -> list[Check]:
    checks = []
    grid = linf_points()
    dsup = float(np.max(np.abs(EXP.derivative(1)(grid))))
    for p in SMALL_GRID:
        worst = max(commute_check(EXP, n, p) for n in (5, 10, 20)) / dsup
        checks.append(Check.at_most(f"d S_n f = S_(n-1)^(a+1,b+1) f' {label(p)}", worst, 1e-9))
        q = Fn.from_poly(jacobi_J_poly(6, p))
        j = Fn.from_poly(jacobi_J_poly(11, p))
        checks += [
            Check.at_most(f"commutation on degree 6 {label(p)}", commute_check(q, 8, p), 1e-11),
            Check.at_most(f"commutation on J_(n+1) {label(p)}", commute_check(j, 10, p), 1e-10),
        ]
    return checks


def _decay_chain() -> list[Check]:
    checks = []
    for p in (Params(), Params(0.5, -0.5)):
        slack = max(
            decay_chain_ratio(RUNGE, n, p) / decay_chain_bound(n, p)
            for n in (5, 10, 20, 40, 70, 100)
        )
        checks.append(Check.at_most(f"decay chain on runge {label(p)}", slack, 1.0 + 1e-6))
        slack = max(decay_chain_ratio(EXP, n, p, N=40) / decay_chain_bound(n, p) for n in (5, 8))
        checks.append(Check.at_most(f"decay chain on exp {label(p)}", slack, 1.0 + 1e-6))
    endpoint = registry("endpoint:2.5").fn
    jackson = max(jackson_ratio(endpoint, n, 2, Params()) for n in (10, 20, 50, 100))
    checks.append(Check.at_most("Jackson ratio r=2 endpoint:2.5", jackson, 10.0))
    return checks


def _sharpness() -> list[Check]:
    worst = 0.0
    for p in (Params(), Params(0.5, 0.0)):
        for n in (12, 16, 24):
            for k in (0, 1, 2):
                worst = max(worst, sharpness_identity(n, k, p))
    return [Check.at_most("d^k g - d^k S_n g = J_(n+1-k)^(a+k,b+k)", worst, 1e-7)]


def run(ctx: SuiteContext) -> list[Check]:
    return [
        *_coefficients(),
        *_partial_sums(ctx),
        *_eta(),
        *_best_errors(),
        *_commutation(),
        *_decay_chain(),
        *_sharpness(),
    ]
