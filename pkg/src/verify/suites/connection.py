"""
Connection invariants: tau and the promotion relations, the connection rows,
the sigma tails and the main identity, and the auxiliary scalar identities.

Unscaled readings of the constants are evaluated next to the rescaled ones
and reported without being asserted.
"""

import numpy as np

from src.experiments.registry import registry
from src.jacobi.connection import (
    B,
    alpha_promotion_row,
    beta_promotion_row,
    compose_promotions,
    conn_coeffs,
    conn_expansion_error,
    cross_symmetry,
    d_energy_ratio,
    energy_ratio,
    energy_ratio_closed,
    finite_sum_identity,
    h_shift_identity,
    main_lemma_residual,
    promote,
    sigma_closed_form,
    sigma_tails,
    tau,
)
from src.jacobi.expansion import expand
from src.jacobi.poly import Params
from src.jacobi.quadrature import Fn, gauss_jacobi, linf_points
from src.jacobi.special import h_norm, jacobi_J, jacobi_J_poly
from src.verify.suite import Check, SuiteContext
from src.verify.suites._common import PARAM_GRID, SMALL_GRID, label, random_poly, rel_err

SUITE_NAME = "connection"
GROUP = "connection"
SEED_OFFSET = 5

EXP = registry("exp").fn
RUNGE = registry("runge").fn


def _tau_and_promotion() -> list[Check]:
    checks = [
        Check.at_most(
            "tau_1^(0,0) literal = 1/6", abs(tau(1, Params(), literal=True) - 1.0 / 6.0), 1e-15
        ),
        Check.at_most(
            "tau_1^(0,-0.5) literal = 2/15",
            abs(tau(1, Params(0.0, -0.5), literal=True) - 2.0 / 15.0),
            1e-15,
        ),
        Check.at_most(
            "tau = 2 * literal tau",
            abs(tau(3, Params(0.3, 0.7)) - 2.0 * tau(3, Params(0.3, 0.7), literal=True)),
            0.0,
        ),
    ]
    xs = np.linspace(-0.9, 0.9, 9)
    p = Params(0.3, 0.7)
    n = 4
    one, t = promote(n, p, "alpha")
    lhs = jacobi_J(n, p, xs)
    up = Params(p.alpha + 1.0, p.beta)
    rhs = one * jacobi_J(n, up, xs) + t * jacobi_J(n - 1, up, xs)
    checks.append(Check.at_most("alpha promotion n=4 (0.3,0.7)", rel_err(rhs, lhs), 1e-11))
    one, t = promote(n, p, "beta")
    up = Params(p.alpha, p.beta + 1.0)
    rhs = one * jacobi_J(n, up, xs) + t * jacobi_J(n - 1, up, xs)
    checks.append(Check.at_most("beta promotion n=4 (0.3,0.7)", rel_err(rhs, lhs), 1e-11))

    one, t = promote(1, Params(), "alpha")
    rhs = one * jacobi_J(1, Params(1.0, 0.0), xs) + t * jacobi_J(0, Params(1.0, 0.0), xs)
    checks.append(Check.at_most("x = J_1^(1,0) - tau_1 J_0^(1,0)", rel_err(rhs, xs), 1e-13))
    return checks


def _rows() -> list[Check]:
    c0 = conn_coeffs(0, Params(0.3, 0.7))
    c41 = conn_coeffs(4, Params(1.0, 0.0))
    checks = [
        Check.at_most("C_(0,0) = 1", abs(c0.values[0] - 1.0), 1e-14),
        Check.at_most("C_(4,1) < 0 for (1,0)", float(c41.values[1]), 0.0),
    ]
    p = Params()
    rule = gauss_jacobi(8, p)
    target = jacobi_J(3, p.shifted(1), rule.nodes)
    projection = [
        rule.integrate(target * jacobi_J(j, p, rule.nodes)) / h_norm(j, p) for j in range(4)
    ]
    row_err = rel_err(conn_coeffs(3, p).values, projection)
    checks.append(Check.at_most("row 3 = projection (0,0)", row_err, 1e-12))

    worst_composed = worst_promoted = worst_pointwise = 0.0
    grid = linf_points()
    for p in SMALL_GRID:
        for n in range(41):
            row = conn_coeffs(n, p)
            worst_composed = max(worst_composed, rel_err(row.composed(), row.values))
            worst_pointwise = max(worst_pointwise, conn_expansion_error(n, p, grid))
            if n <= 10:
                worst_promoted = max(worst_promoted, rel_err(compose_promotions(n, p), row.values))
    checks += [
        Check.at_most("row recomposed from A, B", worst_composed, 1e-13),
        Check.at_most("J_n^(a+1,b+1) = sum C_(n,j) J_j", worst_pointwise, 1e-9),
        Check.at_most("alpha then beta promotion = row", worst_promoted, 1e-11),
    ]

    # single promotion rows against the pointwise relation
    p = Params(0.3, 0.7)
    worst = 0.0
    for n in range(1, 12):
        a_row = alpha_promotion_row(n, p)
        b_row = beta_promotion_row(n, p)
        a_sum = sum(a_row[k] * jacobi_J(k, p, grid) for k in range(n + 1))
        b_sum = sum(b_row[k] * jacobi_J(k, p, grid) for k in range(n + 1))
        worst = max(
            worst,
            rel_err(a_sum, jacobi_J(n, Params(p.alpha + 1.0, p.beta), grid)),
            rel_err(b_sum, jacobi_J(n, Params(p.alpha, p.beta + 1.0), grid)),
        )
    checks.append(Check.at_most("single promotion rows (0.3,0.7)", worst, 1e-11))
    return checks


def _closed_tail_error(f: Fn, p: Params, j: int, N: int) -> float:
    s1, s2 = sigma_tails(expand(f, N, p), j)
    c1, c2 = sigma_closed_form(expand(f.diff(1), N, p), j)
    return rel_err([s1, s2], [c1, c2])


def _sigma(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET)
    checks = []
    worst_zero = worst_single = 0.0
    for p in SMALL_GRID:
        for j in (2, 5, 9):
            q = Fn.from_poly(random_poly(rng, j))
            c = expand(q, 40, p)
            worst_zero = max(worst_zero, max(abs(v) for v in sigma_tails(c, j)) / np.sqrt(c.energy))

            single = expand(Fn.from_poly(jacobi_J_poly(j + 1, p)), j + 10, p)
            expected = [(-1.0) ** j * B(j, p), B(j, p.swapped())]
            worst_single = max(worst_single, rel_err(sigma_tails(single, j), expected))
    checks.append(Check.at_most("sigma tails vanish on Pi_j", worst_zero, 1e-12))
    checks.append(Check.at_most("sigma tails of J_(j+1)", worst_single, 1e-10))

    for p in (Params(), Params(0.5, -0.5), Params(1.0, 0.0)):
        exp_err = max(_closed_tail_error(EXP, p, j, 40) for j in (0, 1, 3))
        runge_err = max(_closed_tail_error(RUNGE, p, j, 256) for j in (0, 3, 10))
        checks.append(Check.at_most(f"sigma closed form exp {label(p)}", exp_err, 1e-9))
        checks.append(Check.at_most(f"sigma closed form runge {label(p)}", runge_err, 1e-9))

        c = expand(EXP, 40, p)
        worst = 0.0
        for j in range(5):
            s1, s2 = sigma_tails(c, j)
            n1, n2 = sigma_tails(c, j + 1)
            fj = c.coeffs[j + 1]
            step = [s1 - (-1.0) ** j * fj * B(j, p), s2 - fj * B(j, p.swapped())]
            worst = max(worst, rel_err([n1, n2], step))
        checks.append(Check.at_most(f"sigma recurrence exp {label(p)}", worst, 1e-11))
    return checks


def _main_identity(ctx: SuiteContext) -> list[Check]:
    rng = ctx.rng(SEED_OFFSET + 100)
    grid = linf_points()
    checks = []
    for p in (Params(), Params(0.5, 0.0), Params(0.3, 0.7)):
        q = Fn.from_poly(random_poly(rng, 8))
        scale = max(1.0, float(np.max(np.abs(q.derivative(1)(grid)))))
        residual = main_lemma_residual(q, 8, p) / scale
        checks.append(Check.at_most(f"main identity on Pi_n {label(p)}", residual, 1e-11))
        cases = {"exp": EXP, "runge": RUNGE, "(1+x)^4.5": registry("endpoint:4.5").fn.reflected()}
        for name, f in cases.items():
            dsup = float(np.max(np.abs(f.derivative(1)(grid))))
            worst = max(main_lemma_residual(f, n, p) for n in (8, 12, 20)) / dsup
            checks.append(Check.at_most(f"main identity {name} {label(p)}", worst, 1e-7))
        literal = main_lemma_residual(EXP, 12, p, literal=True) / float(np.max(np.abs(EXP(grid))))
        checks.append(Check.report(f"main identity unscaled constants exp {label(p)}", literal))
    return checks


def _scalar_identities() -> list[Check]:
    checks = []
    worst_sym = worst_value = worst_sum = worst_energy = worst_shift = worst_d = 0.0
    mixed_equal = mixed_other = 0.0
    literal_sum = 0.0
    for p in PARAM_GRID:
        a, b = p.alpha, p.beta
        for j in range(21):
            lhs, rhs = cross_symmetry(j, p)
            worst_sym = max(worst_sym, rel_err(lhs, rhs))
            worst_value = max(worst_value, rel_err(lhs, (2.0 * j + a + b + 3.0) / 2.0))
            pl, pr = cross_symmetry(j, p, mixed=True)
            if a == b:
                mixed_equal = max(mixed_equal, rel_err(pl, pr))
            else:
                mixed_other = max(mixed_other, rel_err(pl, pr))
        for n in range(31):
            for j in range(n + 1):
                lhs, rhs = finite_sum_identity(j, n, p)
                worst_sum = max(worst_sum, abs(lhs - rhs) / max(1.0, abs(rhs)))
                lhs, rhs = finite_sum_identity(j, n, p, literal=True)
                literal_sum = max(literal_sum, abs(lhs - rhs) / max(1.0, abs(rhs)))
        for n in range(1, 41):
            for swapped in (False, True):
                worst_energy = max(
                    worst_energy,
                    rel_err(energy_ratio(n, p, swapped), energy_ratio_closed(n, p, swapped)),
                )
        for k in range(51):
            worst_shift = max(worst_shift, rel_err(*h_shift_identity(k, p)))
        worst_d = max(worst_d, abs(d_energy_ratio(200, p) - 1.0))
    checks += [
        Check.at_most("A_(j+1) B_j symmetric under a <-> b", worst_sym, 1e-12),
        Check.at_most("A_(j+1) B_j = (2j+a+b+3)/2", worst_value, 1e-12),
        Check.at_most("mixed cross symmetry, a = b", mixed_equal, 1e-12),
        Check.report("mixed cross symmetry, a != b", mixed_other),
        Check.at_most("alternating finite sum closed form", worst_sum, 1e-11),
        Check.report("alternating finite sum, unscaled summand", literal_sum),
        Check.at_most("energy ratio closed form", worst_energy, 1e-10),
        Check.at_most("h_(k+1) (k+1)(k+a+b+2) = h_k^(a+1,b+1)", worst_shift, 1e-12),
        Check.at_most("|h_n D_n^2 / h_(n+1) - 1| at n=200", worst_d, 0.1),
    ]
    return checks


def run(ctx: SuiteContext) -> list[Check]:
    return [
        *_tau_and_promotion(),
        *_rows(),
        *_sigma(ctx),
        *_main_identity(ctx),
        *_scalar_identities(),
    ]
