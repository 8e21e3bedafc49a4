"""
Sobolev-basis invariants: the anchored basis, orthogonality under the
Sobolev inner product, the Sobolev partial sum and the simultaneous
approximant, and the bounded-ratio estimates for both operators.
"""

import numpy as np

from src.config import get_settings
from src.experiments.registry import registry
from src.jacobi.expansion import (
    best_error_l2,
    best_error_surrogate,
    expand,
    partial_sum,
    vallee_poussin,
)
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn, combine_lp, linf_points
from src.jacobi.sobolev import (
    SobolevConfig,
    approximant_V,
    cJ,
    closed_form_check,
    sobolev_expand,
    sobolev_gram,
    sobolev_h,
    sobolev_inner,
    sobolev_partial_sum,
    taylor_remainder_error,
)
from src.jacobi.special import jacobi_J
from src.verify.suite import Check, SuiteContext
from src.verify.suites._common import label, random_poly, random_sobolev_poly, rel_err

SUITE_NAME = "sobolev-basis"
GROUP = "sobolev"
SEED_OFFSET = 6

GRAM_DEGREE = 12
GRAM_PARAMS = (Params(0.0, 0.0), Params(0.5, 0.0), Params(0.0, 0.5), Params(-0.3, 0.7))
THETAS = (-1.0, 0.0, 0.4, 1.0)

EXP = registry("exp").fn

# (s, theta, params) for the bounded-ratio estimates
RATIO_CONFIGS = (
    SobolevConfig(s=1, theta=-1.0, params=Params(0.0, 0.0)),
    SobolevConfig(s=2, theta=-1.0, params=Params(0.5, 0.0)),
    SobolevConfig(s=1, theta=1.0, params=Params(0.0, 0.5)),
)
# interior anchors for the plain Sobolev partial sum
PARTIAL_SUM_CONFIGS = (
    SobolevConfig(s=1, theta=0.0, params=Params(0.0, 0.0)),
    SobolevConfig(s=2, theta=0.4, params=Params(0.3, 0.7)),
)
RATIO_FUNCTIONS = ("runge", "interior:3.5:0.3")
RATIO_NS = (8, 16, 32, 64)


def _cfg_name(cfg: SobolevConfig) -> str:
    return f"s={cfg.s} theta={cfg.theta:g} {label(cfg.params)}"


def _grid_configs() -> list[SobolevConfig]:
    return [
        SobolevConfig(s=s, theta=theta, params=p)
        for s in (1, 2, 3)
        for theta in THETAS
        for p in GRAM_PARAMS
    ]


def _basis() -> list[Check]:
    grid = linf_points()
    checks = [
        Check.at_most(
            "cJ_2 = x^2/2 for s=3, theta=0",
            rel_err(cJ(2, SobolevConfig(s=3, theta=0.0))(grid), grid**2 / 2.0),
            1e-14,
        )
    ]
    worst = 0.0
    for s in (1, 2, 3):
        for theta in (-1.0, 0.4, 1.0):
            for p in (Params(0.0, 0.0), Params(-0.3, 0.7)):
                cfg = SobolevConfig(s=s, theta=theta, params=p)
                for n in range(s, 41):
                    top = cJ(n, cfg).deriv(s)(grid)
                    worst = max(worst, rel_err(top, jacobi_J(n - s, p, grid)))
    checks.append(Check.at_most("d^s cJ_n = J_(n-s)", worst, 1e-10))

    worst_anchor = 0.0
    for cfg in _grid_configs():
        at = np.array([cfg.theta])
        for n in range(GRAM_DEGREE + 1):
            q = cJ(n, cfg)
            for k in range(cfg.s):
                expected = 1.0 if k == n else 0.0
                worst_anchor = max(worst_anchor, abs(float(q.deriv(k)(at)[0]) - expected))
    checks.append(Check.at_most("anchor conditions d^k cJ_n(theta)", worst_anchor, 1e-10))
    return checks


def _orthogonality() -> list[Check]:
    checks = []
    for cfg in _grid_configs():
        gram = sobolev_gram(GRAM_DEGREE, cfg)
        diag = np.diag(gram)
        expected = np.array([sobolev_h(n, cfg) for n in range(GRAM_DEGREE + 1)])
        off = float(np.max(np.abs(gram - np.diag(diag)))) / float(np.max(diag))
        name = _cfg_name(cfg)
        diag_err = float(np.max(np.abs(diag / expected - 1.0)))
        checks.append(Check.at_most(f"Gram off-diagonal {name}", off, 1e-9))
        checks.append(Check.at_most(f"Gram diagonal {name}", diag_err, 1e-9))
    return checks


def _inner_and_expand() -> list[Check]:
    one = Fn.constant(1.0)
    x = Fn.from_poly(Poly(np.array([0.0, 1.0])), label="x")
    ones = sobolev_inner(one, one, SobolevConfig(s=1))
    xs = sobolev_inner(x, x, SobolevConfig(s=1, theta=0.0))
    checks = [
        Check.at_most("<1, 1>^-1 = 1", abs(ones - 1.0), 1e-14),
        Check.at_most("<x, x>^-1 = 2 at theta=0", abs(xs - 2.0), 1e-14),
    ]
    cfg = SobolevConfig(s=3, theta=0.4)
    quad = Fn.from_poly(Poly.taylor_monomial(2, 0.4))
    ser = sobolev_expand(quad, 10, cfg)
    expected = np.zeros(11)
    expected[2] = 1.0
    err = float(np.max(np.abs(ser.coeffs - expected)))
    checks.append(Check.at_most("expand (x-theta)^2/2", err, 1e-13))

    cfg = SobolevConfig(s=2, theta=0.4, params=Params(0.3, 0.7))
    ser = sobolev_expand(Fn.from_poly(cJ(7, cfg)), 12, cfg)
    unit = np.zeros(13)
    unit[7] = 1.0
    err = float(np.max(np.abs(ser.coeffs - unit)))
    checks.append(Check.at_most("expand cJ_7 = unit vector", err, 1e-10))

    cfg = SobolevConfig(s=1, theta=-1.0)
    ser = sobolev_expand(EXP, 20, cfg)
    legendre = expand(EXP, 19, Params())
    tail_err = rel_err(ser.tail.coeffs, legendre.coeffs)
    checks += [
        Check.at_most("expand exp: taylor = e^-1", abs(ser.taylor[0] - np.exp(-1.0)), 1e-15),
        Check.at_most("expand exp: tail = Legendre coefficients", tail_err, 1e-13),
    ]
    return checks


def _operators(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET)
    grid = linf_points()
    checks = []
    n = 10
    worst_s = worst_v = worst_ds = worst_dv = 0.0
    for cfg in _grid_configs():
        q = random_sobolev_poly(rng, n, cfg.s, cfg.theta)
        f = Fn.from_poly(q)
        partial = sobolev_partial_sum(sobolev_expand(f, n, cfg), n)
        worst_s = max(worst_s, rel_err(partial(grid), q(grid)))
        worst_v = max(worst_v, rel_err(approximant_V(f, n, cfg)(grid), q(grid)))
    checks.append(Check.at_most("Sobolev partial sum reproduces Pi_n", worst_s, 1e-11))
    checks.append(Check.at_most("simultaneous approximant reproduces Pi_n", worst_v, 1e-11))

    for cfg in (SobolevConfig(s=1), SobolevConfig(s=2, theta=0.4, params=Params(0.5, 0.0))):
        s, p = cfg.s, cfg.params
        fs = EXP.diff(s)
        fs_sup = float(np.max(np.abs(fs(grid))))
        ser = sobolev_expand(EXP, 16, cfg)
        lhs = sobolev_partial_sum(ser, 16).deriv(s)(grid)
        worst_ds = max(worst_ds, rel_err(lhs, partial_sum(expand(fs, 16 - s, p), 16 - s)(grid)))
        lhs = approximant_V(EXP, 6, cfg).deriv(s)(grid)
        rhs = vallee_poussin(expand(fs, 12, p), 6)(grid)
        worst_dv = max(worst_dv, float(np.max(np.abs(lhs - rhs))) / fs_sup)
    checks.append(Check.at_most("d^s S_n f = S_(n-s) f^(s)", worst_ds, 1e-10))
    checks.append(Check.at_most("d^s V_n f = V_n f^(s)", worst_dv, 1e-10))

    small = SobolevConfig(s=3, theta=0.2)
    taylor = sobolev_partial_sum(sobolev_expand(EXP, 8, small), 1)
    line = np.exp(0.2) * (1.0 + (grid - 0.2))
    taylor_err = rel_err(taylor(grid), line)
    checks.append(Check.at_most("S_1 exp = Taylor polynomial for n < s", taylor_err, 1e-14))

    degree = approximant_V(EXP, 6, SobolevConfig(s=2)).degree
    checks.append(Check.at_most("degree of V_6 exp with s=2", float(degree), 14.0))
    return checks


def _closed_form() -> list[Check]:
    exact = unshifted = 0.0
    for s in (1, 2, 3):
        for beta in (0.0, 0.5, 1.3):
            for n in range(s, 13):
                c, pr = closed_form_check(n, s, beta)
                exact = max(exact, c)
                unshifted = max(unshifted, pr)
    c, _ = closed_form_check(5, 2, 0.5)
    return [
        Check.at_most("closed form at theta=1, alpha=0", exact, 1e-9),
        Check.report("closed form with J^(0,b) instead", unshifted),
        Check.at_most("closed form n=5 s=2 b=0.5", c, 1e-9),
    ]


def _remainders(ctx: SuiteContext) -> list[Check]:
    order = get_settings().norm_quad_order
    checks = []
    cfg = SobolevConfig(s=2, theta=0.4, params=Params(0.3, 0.7))
    poly = random_poly(ctx.rng(SEED_OFFSET + 100), 7)
    zero = taylor_remainder_error(Fn.from_poly(poly), poly, cfg, 2.0)
    checks.append(Check.at_most("remainders of q against itself", float(np.max(zero)), 1e-13))

    runge = registry("runge").fn
    v = approximant_V(runge, 10, cfg, order=order)
    comps = taylor_remainder_error(runge, v, cfg, 2.0, order)
    direct = best_error_surrogate(runge.diff(2), 10, 2.0, cfg.params, order=order)
    component_err = rel_err(comps[-1], direct)
    checks.append(Check.at_most("component s = ||f^(s) - V_n f^(s)||", component_err, 1e-9))

    cfg = SobolevConfig(s=1, theta=-1.0)
    endpoint = registry("endpoint:1.75").fn
    table = np.array(
        [
            taylor_remainder_error(
                endpoint, approximant_V(endpoint, n, cfg, order=order), cfg, 2.0, order
            )
            for n in (8, 16, 32)
        ]
    )
    rise = float(np.max(np.diff(table, axis=0)))
    checks.append(Check.at_most("endpoint:1.75 remainders decrease in n", rise, 0.0))
    return checks


def _w_error(f: Fn, q: Poly, cfg: SobolevConfig, order: int) -> float:
    """||f - q||_{W^s_2(w)} from the per-derivative remainders."""
    return combine_lp(list(taylor_remainder_error(f, q, cfg, 2.0, order)), 2.0)


def _bounded_ratios() -> list[Check]:
    settings = get_settings()
    order, bound = settings.norm_quad_order, settings.ratio_bound
    checks = []
    for fid in RATIO_FUNCTIONS:
        f = registry(fid).fn
        for cfg in RATIO_CONFIGS:
            fs = f.diff(cfg.s)
            ratios = [
                _w_error(f, approximant_V(f, n, cfg, order=order), cfg, order)
                / best_error_surrogate(fs, n, 2.0, cfg.params)
                for n in RATIO_NS
            ]
            name = f"W^s error of V_n / surrogate {fid} {_cfg_name(cfg)}"
            checks.append(Check.at_most(name, max(ratios), bound))
        for cfg in PARTIAL_SUM_CONFIGS:
            fs = f.diff(cfg.s)
            ratios = []
            for n in RATIO_NS:
                partial = sobolev_partial_sum(sobolev_expand(f, n, cfg, order=order), n)
                coeffs = expand(fs, 4 * n, cfg.params, order=order)
                best = best_error_l2(coeffs, n - cfg.s, check_tail=False)
                ratios.append(_w_error(f, partial, cfg, order) / best)
            name = f"W^s error of S_n / E_(n-s) {fid} {_cfg_name(cfg)}"
            checks.append(Check.at_most(name, max(ratios), bound))
    return checks


def run(ctx: SuiteContext) -> list[Check]:
    return [
        *_basis(),
        *_orthogonality(),
        *_inner_and_expand(),
        *_operators(ctx),
        *_closed_form(),
        *_remainders(ctx),
        *_bounded_ratios(),
    ]
