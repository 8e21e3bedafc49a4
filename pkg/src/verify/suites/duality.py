"""
Duality invariants: closed-form dual functions, boundary conditions, the
boundary-value-problem residual, linearity, the pairing identity and the
weighted bound on the highest derivative.
"""

import numpy as np

from src.config import get_settings
from src.experiments.registry import registry
from src.jacobi.duality import (
    DualSpec,
    bvp_residual,
    dual_u,
    left_boundary_values,
    pairing_check,
    right_boundary_profile,
    ug_bound_ratio,
    ug_regime_ok,
)
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn, linf_points
from src.jacobi.sobolev import SobolevConfig, cJ
from src.jacobi.special import jacobi_J_poly
from src.logging_config import get_logger
from src.verify.suite import Check, SuiteContext
from src.verify.suites._common import label, random_poly, rel_err

SUITE_NAME = "duality"
GROUP = "duality"
SEED_OFFSET = 7

ONE = Fn.constant(1.0)
ZERO = Fn.constant(0.0)
XS = np.linspace(-1.0, 1.0, 9)

# both exponents below 1 so u exists for either anchor
PAIRING_PARAMS = (Params(0.0, 0.0), Params(0.5, -0.5), Params(0.3, 0.7), Params(-0.3, 0.2))

BOUND_SPECS = (
    DualSpec(k=0, s=1, params=Params(0.0, 0.0)),
    DualSpec(k=0, s=2, params=Params(0.5, 0.0)),
    DualSpec(k=1, s=2, params=Params(0.3, 0.0)),
    DualSpec(k=0, s=1, params=Params(0.0, -0.3)),
    DualSpec(k=0, s=2, params=Params(0.0, 0.4), anchor=1),
)
BOUND_EXPONENTS = (1.0, 2.0, np.inf)

logger = get_logger(__name__)


def _spec_name(spec: DualSpec) -> str:
    return f"k={spec.k} s={spec.s} {label(spec.params)} anchor={spec.anchor:+d}"


def _sup(g: Fn) -> float:
    return float(np.max(np.abs(g(linf_points()))))


def _closed_forms() -> list[Check]:
    spec = DualSpec(k=0, s=1)
    u = dual_u(ONE, spec, XS)
    expected = XS - XS**2 / 2.0 + 1.5
    zero = float(np.max(np.abs(dual_u(ZERO, DualSpec(k=0, s=2), XS))))
    checks = [
        Check.at_most("u = 0 for g = 0", zero, 0.0),
        Check.at_most("u = x - x^2/2 + 3/2 for g = 1", rel_err(u, expected), 1e-9),
        Check.at_most("u(1) = 2 for g = 1", abs(float(dual_u(ONE, spec, 1.0)[0]) - 2.0), 1e-9),
    ]
    for p in (Params(0.0, 0.0), Params(0.5, -0.5)):
        g = Fn.from_poly(jacobi_J_poly(3, p))
        spec = DualSpec(k=0, s=2, params=p)
        worst = float(np.max(left_boundary_values(g, spec))) / max(1.0, _sup(g))
        checks.append(Check.at_most(f"u^(j)(-1) = 0 for g = J_3 {label(p)}", worst, 1e-8))
    mirrored = DualSpec(k=0, s=2, params=Params(0.4, 0.0), anchor=1)
    worst = float(np.max(left_boundary_values(ONE, mirrored)))
    checks.append(Check.at_most("u^(j)(1) = 0 for the mirrored anchor", worst, 1e-8))
    return checks


def _bvp() -> list[Check]:
    j2 = Fn.from_poly(jacobi_J_poly(2, Params()))
    j3 = Fn.from_poly(jacobi_J_poly(3, Params()))
    j3_shifted = Fn.from_poly(jacobi_J_poly(3, Params(0.5, 0.0)))
    first, second = DualSpec(k=0, s=1), DualSpec(k=0, s=2)
    checks = [
        Check.at_most("BVP residual g = 0", bvp_residual(ZERO, first), 1e-14),
        Check.at_most("BVP residual g = 1, s=1", bvp_residual(ONE, first), 1e-8),
        Check.at_most("BVP residual g = J_2, s=1", bvp_residual(j2, first) / _sup(j2), 1e-6),
        Check.at_most("BVP residual g = J_3, s=2", bvp_residual(j3, second) / _sup(j3), 1e-6),
    ]
    spec = DualSpec(k=0, s=1, params=Params(0.5, 0.0))
    residual = bvp_residual(j3_shifted, spec) / _sup(j3_shifted)
    checks.append(Check.report("BVP residual g = J_3^(0.5,0), s=1", residual))
    return checks


def _linearity_and_profile() -> list[Check]:
    spec = DualSpec(k=1, s=2, params=Params(0.3, 0.5))
    g1 = Fn.from_poly(jacobi_J_poly(2, spec.params))
    g2 = registry("exp").fn
    a, b = 2.0, -0.5
    u1, u2 = dual_u(g1, spec, XS), dual_u(g2, spec, XS)
    combined = dual_u(lambda y: a * g1(y) + b * g2(y), spec, XS)
    scale = float(np.max(np.abs(a * u1) + np.abs(b * u2)))
    linearity = float(np.max(np.abs(combined - (a * u1 + b * u2)))) / scale
    checks = [Check.at_most("u is linear in g", linearity, 1e-9)]
    for anchor in (-1, 1):
        spec = DualSpec(k=0, s=2, params=Params(0.3, 0.5), anchor=anchor)
        profiles = [right_boundary_profile(g2, spec, j) for j in range(spec.m + 1)]
        rise = max(float(np.max(np.diff(profile))) for profile in profiles)
        name = f"(w u^(s))^(j) decays near the far endpoint, anchor {anchor:+d}"
        checks.append(Check.at_most(name, rise, 0.0))
    return checks


def _pairing(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET)
    v = Fn.from_poly(Poly.taylor_monomial(2, -1.0) * 2.0, label="(x+1)^2")
    lhs, rhs = pairing_check(ONE, v, DualSpec(k=0, s=1))
    checks = [
        Check.at_most("pairing rhs = 8/3", abs(rhs - 8.0 / 3.0), 1e-12),
        Check.at_most("pairing lhs = 8/3", abs(lhs - 8.0 / 3.0), 1e-9),
    ]
    worst = 0.0
    for _ in range(10):
        s = int(rng.integers(1, 4))
        k = int(rng.integers(0, s))
        anchor = int(rng.choice([-1, 1]))
        p = PAIRING_PARAMS[int(rng.integers(0, len(PAIRING_PARAMS)))]
        cfg = SobolevConfig(s=s, theta=float(anchor), params=p)
        total = Poly.zero()
        for n in range(s, s + 6):
            q = cJ(n, cfg)
            total = total + float(rng.uniform(-1.0, 1.0)) / q.sup_norm(linf_points()) * q
        g = Fn.from_poly(random_poly(rng, int(rng.integers(0, 6))))
        spec = DualSpec(k=k, s=s, params=p, anchor=anchor)
        lhs, rhs = pairing_check(g, Fn.from_poly(total), spec)
        worst = max(worst, abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1.0))
    checks.append(Check.at_most("pairing identity over random cases", worst, 1e-7))
    return checks


def _bounds(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET + 100)
    bound = get_settings().ug_bound
    spec = DualSpec(k=0, s=1)
    exact = abs(ug_bound_ratio(ONE, spec, 2.0) - np.sqrt(2.0 / 3.0))
    checks = [Check.at_most("ug ratio g = 1, q = 2", exact, 1e-9)]
    g = Fn.from_poly(jacobi_J_poly(5, Params(0.5, 0.0)))
    spec = DualSpec(k=0, s=2, params=Params(0.5, 0.0))
    checks.append(Check.at_most("ug ratio J_5^(0.5,0), s=2", ug_bound_ratio(g, spec, 2.0), bound))
    g = Fn.from_poly(jacobi_J_poly(5, Params(0.5, 0.5)))
    off = DualSpec(k=0, s=2, params=Params(0.5, 0.5))
    checks.append(Check.report("ug ratio J_5^(0.5,0.5), s=2, b != 0", ug_bound_ratio(g, off, 2.0)))

    family = [Fn.from_poly(random_poly(rng, d)) for d in (0, 2, 3, 5, 6)]
    for spec in BOUND_SPECS:
        members = family + [Fn.from_poly(jacobi_J_poly(n, spec.params)) for n in range(1, 6)]
        for qexp in BOUND_EXPONENTS:
            worst = max(ug_bound_ratio(g, spec, qexp) for g in members)
            name = f"ug ratio {_spec_name(spec)} q={qexp:g}"
            if ug_regime_ok(spec, qexp):
                checks.append(Check.at_most(name, worst, bound))
            else:
                logger.debug("Weighted bound outside its regime", spec=_spec_name(spec), q=qexp)
                checks.append(Check.report(name, worst))
    return checks


def run(ctx: SuiteContext) -> list[Check]:
    return [
        *_closed_forms(),
        *_bvp(),
        *_linearity_and_profile(),
        *_pairing(ctx),
        *_bounds(ctx),
    ]
