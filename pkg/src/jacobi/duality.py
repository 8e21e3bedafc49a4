"""
The dual function of the simultaneous-approximation argument.

For 0 <= k < s and m = s - k - 1,

    G_r(t) = int_t^1 (y-t)^r / r! g(y) w(y) dy,
    u(x)   = int_{-1}^x (x-t)^(s-1)/(s-1)! G_m(t) / w(t) dt,

so that u^(s) = G_m / w and u solves

    (-1)^(s-k) w^-1 d^(s-k)/dx^(s-k) (w u^(s)) = g,   u^(j)(-1) = 0 (j < s).

G_m is evaluated from the right endpoint for t >= 0 and as the full moment
integral minus the part over [-1, t] for t < 0; each piece then carries its
endpoint behaviour as an explicit power, so every quadrature sees a smooth
integrand or a matching Jacobi weight. The anchor +1 variant is obtained by
reflecting x -> -x and swapping (a, b).
"""

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable

import numpy as np
from numpy.polynomial import Chebyshev

from src.config import get_settings
from src.exceptions import IntegralNotConverged, PreconditionViolated
from src.jacobi.poly import Params
from src.jacobi.quadrature import Fn, gauss_jacobi, gauss_legendre, inner
from src.jacobi.special import pochhammer
from src.logging_config import get_logger

logger = get_logger(__name__)

# Half-width of the excluded endpoint neighbourhoods in the BVP residual
BVP_DELTA = 1e-2
BVP_MAX_DEGREE = 256
BVP_CHOP = 1e-13
PRECONDITION_TOL = 1e-8

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DualSpec:
    """
    Which dual function to build.

    Attributes:
        k: Derivative order being estimated, 0 <= k < s.
        s: Order of the Sobolev space.
        params: Weight parameters (a, b).
        anchor: -1 for the left-anchored function, +1 for its mirror.
    """

    k: int = 0
    s: int = 1
    params: Params = field(default_factory=Params)
    anchor: int = -1

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"s must be at least 1, got {self.s}")
        if not 0 <= self.k < self.s:
            raise ValueError(f"k must satisfy 0 <= k < s, got k={self.k}, s={self.s}")
        if self.anchor not in (-1, 1):
            raise ValueError(f"anchor must be -1 or 1, got {self.anchor}")
        self.params.require_weighted()

    @property
    def m(self) -> int:
        return self.s - self.k - 1

    def reflected(self) -> "DualSpec":
        return DualSpec(self.k, self.s, self.params.swapped(), -self.anchor)


# ============================================================================
# Inner integrals
# ============================================================================


def _from_right(g: Evaluator, p: Params, r: int, t: np.ndarray, q: int) -> np.ndarray:
    """int_0^1 tau^r (1-tau)^a g(y) (1+y)^b dtau with y = t + (1-t) tau."""
    rule = gauss_jacobi(q, Params(p.alpha, float(r)))
    tau = 0.5 * (rule.nodes + 1.0)
    weights = rule.weights * 2.0 ** (-(p.alpha + r + 1.0))
    y = t[:, None] + (1.0 - t)[:, None] * tau[None, :]
    return (np.asarray(g(y), dtype=float) * (1.0 + y) ** p.beta) @ weights


def _from_left(g: Evaluator, p: Params, r: int, t: np.ndarray, q: int) -> np.ndarray:
    """int_0^1 (1-tau)^r tau^b g(y) (1-y)^a dtau with y = -1 + (1+t) tau."""
    rule = gauss_jacobi(q, Params(float(r), p.beta))
    tau = 0.5 * (rule.nodes + 1.0)
    weights = rule.weights * 2.0 ** (-(r + p.beta + 1.0))
    y = -1.0 + (1.0 + t)[:, None] * tau[None, :]
    return (np.asarray(g(y), dtype=float) * (1.0 - y) ** p.alpha) @ weights


def _full(g: Evaluator, p: Params, r: int, t: np.ndarray, q: int) -> np.ndarray:
    """int_{-1}^1 (y-t)^r / r! g(y) w(y) dy."""
    rule = gauss_jacobi(q, p)
    gw = rule.weights * np.asarray(g(rule.nodes), dtype=float)
    return ((rule.nodes[None, :] - t[:, None]) ** r / factorial(r)) @ gw


def _g_scaled(
    g: Evaluator, p: Params, r: int, x: np.ndarray, q: int, alpha_power: float
) -> np.ndarray:
    """
    (1-x)^(-alpha_power) G_r(x), with (1-x)^(r+a+1) cancelled analytically
    on the right half.
    """
    out = np.empty_like(x)
    right = x >= 0
    if np.any(right):
        xr = x[right]
        out[right] = (
            (1.0 - xr) ** (r + p.alpha + 1.0 - alpha_power)
            / factorial(r)
            * _from_right(g, p, r, xr, q)
        )
    if np.any(~right):
        xl = x[~right]
        weight = (-1.0) ** r * (1.0 + xl) ** (r + p.beta + 1.0) / factorial(r)
        lower = weight * _from_left(g, p, r, xl, q)
        out[~right] = (_full(g, p, r, xl, q) - lower) * (1.0 - xl) ** (-alpha_power)
    return out


def _g_over_w(g: Evaluator, p: Params, r: int, x: np.ndarray, q: int) -> np.ndarray:
    return _g_scaled(g, p, r, x, q, p.alpha) * (1.0 + x) ** (-p.beta)


def _adaptive(compute: Callable[[int], np.ndarray], what: str) -> np.ndarray:
    settings = get_settings()
    q = settings.dual_quad_order
    previous = compute(q)
    while 2 * q <= settings.dual_quad_max:
        q *= 2
        current = compute(q)
        scale = max(1.0, float(np.max(np.abs(current), initial=0.0)))
        if float(np.max(np.abs(current - previous), initial=0.0)) <= settings.panel_tol * scale:
            logger.debug("Dual integral converged", quantity=what, order=q)
            return current
        previous = current
    raise IntegralNotConverged(
        "Dual-function quadrature did not converge", quantity=what, order=q
    )


# ============================================================================
# u and its derivatives (left anchor)
# ============================================================================


def _u_left(g: Evaluator, p: Params, s: int, m: int, x: np.ndarray, j: int, q: int) -> np.ndarray:
    """u^(j)(x) for j < s; the outer integral is split at 0."""
    if p.beta >= 1.0:
        raise IntegralNotConverged(
            "Dual function diverges at the left endpoint", beta=p.beta
        )
    r = s - 1 - j
    singular = gauss_jacobi(q, Params(0.0, -p.beta))
    legendre = gauss_legendre(q)
    out = np.zeros_like(x)
    for i, xi in enumerate(x):
        total = 0.0
        x0 = min(xi, 0.0)
        if x0 > -1.0:
            t, wt = singular.on_interval(-1.0, x0)
            kernel = (xi - t) ** r / factorial(r)
            total += float(np.sum(wt * kernel * _full(g, p, m, t, q) * (1.0 - t) ** (-p.alpha)))
            t, wt = legendre.on_interval(-1.0, x0)
            kernel = (xi - t) ** r / factorial(r)
            lower = (
                (-1.0) ** m
                * (1.0 + t) ** (m + 1.0)
                * (1.0 - t) ** (-p.alpha)
                / factorial(m)
                * _from_left(g, p, m, t, q)
            )
            total -= float(np.sum(wt * kernel * lower))
        if xi > 0.0:
            t, wt = legendre.on_interval(0.0, xi)
            kernel = (xi - t) ** r / factorial(r)
            weight = (1.0 - t) ** (m + 1.0) * (1.0 + t) ** (-p.beta) / factorial(m)
            upper = weight * _from_right(g, p, m, t, q)
            total += float(np.sum(wt * kernel * upper))
        out[i] = total
    return out


def _reflect(g: Evaluator) -> Evaluator:
    return lambda y: g(-np.asarray(y))


def dual_u(g: Evaluator, spec: DualSpec, x: np.ndarray | float, j: int = 0) -> np.ndarray:
    """
    u^(j)(x) for 0 <= j <= s.

    j = s returns G_m / w, which is singular at endpoints where the weight
    vanishes.

    Raises:
        IntegralNotConverged: If order doubling reaches dual_quad_max, or u
            diverges (b >= 1 for the left anchor, a >= 1 for the right).

    Example:
        >>> spec = DualSpec(k=0, s=1)
        >>> round(float(dual_u(lambda y: np.ones_like(y), spec, 1.0)[0]), 10)
        2.0
    """
    if not 0 <= j <= spec.s:
        raise ValueError(f"derivative order must be in [0, {spec.s}], got {j}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if spec.anchor == 1:
        mirrored = dual_u(_reflect(g), spec.reflected(), -x, j)
        return (-1.0) ** j * mirrored
    p, s, m = spec.params, spec.s, spec.m
    if j == s:
        return _adaptive(lambda q: _g_over_w(g, p, m, x, q), "u_s")
    return _adaptive(lambda q: _u_left(g, p, s, m, x, j, q), f"u_{j}")


def dual_u_s(g: Evaluator, spec: DualSpec, x: np.ndarray | float) -> np.ndarray:
    return dual_u(g, spec, x, spec.s)


# ============================================================================
# Differential equation and boundary behaviour
# ============================================================================


def _chop_fit(func: Evaluator, lo: float, hi: float) -> Chebyshev:
    fit = Chebyshev.interpolate(func, BVP_MAX_DEGREE, domain=[lo, hi])
    scale = float(np.max(np.abs(fit.coef)))
    if scale == 0.0:
        return fit
    return fit.trim(BVP_CHOP * scale)


def bvp_residual(g: Evaluator, spec: DualSpec, points: int = 101) -> float:
    """
    Max interior residual of (-1)^(s-k) w^-1 (w u^(s))^(s-k) - g.

    u is sampled on [-1 + delta, 1 - delta], fitted by a chopped Chebyshev
    series, differentiated s times, multiplied by w, refitted and
    differentiated s - k more times.
    """
    lo, hi = -1.0 + BVP_DELTA, 1.0 - BVP_DELTA
    p = spec.params
    u_fit = _chop_fit(lambda x: dual_u(g, spec, x), lo, hi)
    u_s = u_fit.deriv(spec.s)
    wu_fit = _chop_fit(lambda x: p.weight(x) * u_s(x), lo, hi)
    n = spec.s - spec.k
    grid = np.linspace(lo, hi, points)
    lhs = (-1.0) ** n * wu_fit.deriv(n)(grid) / p.weight(grid)
    return float(np.max(np.abs(lhs - np.asarray(g(grid), dtype=float))))


def left_boundary_values(g: Evaluator, spec: DualSpec) -> np.ndarray:
    """|u^(j)| at the anchor for j = 0..s-1; all vanish by construction."""
    at = np.array([float(spec.anchor)])
    return np.array([abs(float(dual_u(g, spec, at, j)[0])) for j in range(spec.s)])


def right_boundary_profile(
    g: Evaluator, spec: DualSpec, j: int, exponents: tuple[int, ...] = (2, 3, 4, 5)
) -> np.ndarray:
    """
    |d^j/dx^j (w u^(s))| at distance 10^-e from the endpoint opposite the anchor.

    d^j (w u^(s)) = (-1)^j G_{m-j}, valid for j <= m.
    """
    if not 0 <= j <= spec.m:
        raise ValueError(f"j must be in [0, {spec.m}], got {j}")
    if spec.anchor == 1:
        return right_boundary_profile(_reflect(g), spec.reflected(), j, exponents)
    x = np.array([1.0 - 10.0 ** (-e) for e in exponents])
    p, r = spec.params, spec.m - j
    values = _adaptive(lambda q: _g_scaled(g, p, r, x, q, 0.0), f"G_{r}")
    return np.abs(values)


# ============================================================================
# Pairing identity and the weighted bound
# ============================================================================


def _pairing_lhs(g: Evaluator, dv: Evaluator, p: Params, m: int, q: int) -> float:
    """int G_m v^(s-k) dx, split at 0."""
    legendre = gauss_legendre(q)
    t, wt = legendre.on_interval(-1.0, 0.0)
    total = float(np.sum(wt * _full(g, p, m, t, q) * dv(t)))
    lower_rule = gauss_jacobi(q, Params(0.0, m + p.beta + 1.0))
    t, wt = lower_rule.on_interval(-1.0, 0.0)
    lower = (-1.0) ** m / factorial(m) * _from_left(g, p, m, t, q)
    total -= float(np.sum(wt * lower * dv(t)))
    upper_rule = gauss_jacobi(q, Params(m + p.alpha + 1.0, 0.0))
    t, wt = upper_rule.on_interval(0.0, 1.0)
    total += float(np.sum(wt / factorial(m) * _from_right(g, p, m, t, q) * dv(t)))
    return total


def pairing_check(g: Fn, v: Fn, spec: DualSpec) -> tuple[float, float]:
    """
    Both sides of int u^(s) v^(s-k) w = int g v w.

    For anchor +1 the left side is multiplied by (-1)^k, the orientation sign
    of the mirrored integration by parts, so both anchors return equal sides.

    Raises:
        PreconditionViolated: If v^(j) does not vanish at the anchor for
            some j <= s-k-1.
        MissingDerivative: If v lacks v^(s-k).
    """
    at = np.array([float(spec.anchor)])
    grid = np.linspace(-1.0, 1.0, 257)
    scale = max(1.0, float(np.max(np.abs(v(grid)))))
    for j in range(spec.s - spec.k):
        value = float(v.derivative(j)(at)[0])
        if abs(value) > PRECONDITION_TOL * scale:
            raise PreconditionViolated(
                "Test function does not vanish at the anchor",
                order=j,
                value=value,
                anchor=spec.anchor,
            )
    rhs = inner(g, v, spec.params, get_settings().dual_quad_max)
    if spec.anchor == 1:
        g_eval, v_eval, work = g.reflected(), v.reflected(), spec.reflected()
    else:
        g_eval, v_eval, work = g, v, spec
    dv = v_eval.derivative(spec.s - spec.k)
    lhs = _adaptive(
        lambda q: np.array([_pairing_lhs(g_eval, dv, work.params, work.m, q)]), "pairing"
    )
    return float(lhs[0]), rhs


def _inverse_weight_coefficient(p: Params, j: int, i: int) -> float:
    """Coefficient of (1-x)^(-a-i) (1+x)^(-b-(j-i)) in d^j/dx^j (1/w)."""
    return comb(j, i) * pochhammer(p.alpha, i) * (-1.0) ** (j - i) * pochhammer(p.beta, j - i)


def _high_derivative(g: Evaluator, p: Params, s: int, k: int, x: np.ndarray, q: int) -> np.ndarray:
    """u^(2s-k)(x) by the product rule applied to (1/w) G_m."""
    n = s - k
    out = (-1.0) ** n * np.asarray(g(x), dtype=float)
    for j in range(1, n + 1):
        for i in range(j + 1):
            coef = comb(n, j) * _inverse_weight_coefficient(p, j, i) * (-1.0) ** (n - j)
            if coef == 0.0:
                continue
            scaled = _g_scaled(g, p, j - 1, x, q, p.alpha + i)
            out = out + coef * (1.0 + x) ** (-p.beta - (j - i)) * scaled
    return out


def ug_high_derivative(g: Evaluator, spec: DualSpec, x: np.ndarray | float) -> np.ndarray:
    """u^(2s-k) at interior points x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if spec.anchor == 1:
        n = 2 * spec.s - spec.k
        return (-1.0) ** n * ug_high_derivative(_reflect(g), spec.reflected(), -x)
    return _adaptive(
        lambda q: _high_derivative(g, spec.params, spec.s, spec.k, x, q), "u_high"
    )


def ug_bound_ratio(g: Evaluator, spec: DualSpec, qexp: float, m: int = 128) -> float:
    """
    ||phi^(s-k) u^(2s-k)||_{L^q(w)} / ||g||_{L^q(w)}, phi(x) = sqrt(1 - x^2).

    For q = inf both maxima are taken over Gauss nodes and an open uniform grid.
    """
    p = spec.params
    n = spec.s - spec.k

    def weighted(x: np.ndarray) -> np.ndarray:
        return (1.0 - x * x) ** (0.5 * n) * ug_high_derivative(g, spec, x)

    rule = gauss_jacobi(m, p)
    if np.isinf(qexp):
        pts = np.union1d(rule.nodes, np.linspace(-1.0, 1.0, get_settings().linf_grid)[1:-1])
        num = float(np.max(np.abs(weighted(pts))))
        den = float(np.max(np.abs(np.asarray(g(pts), dtype=float))))
    else:
        num = rule.integrate(np.abs(weighted(rule.nodes)) ** qexp) ** (1.0 / qexp)
        den = rule.integrate(np.abs(np.asarray(g(rule.nodes), dtype=float)) ** qexp) ** (1.0 / qexp)
    if den == 0.0:
        return 0.0
    return num / den


def ug_regime_ok(spec: DualSpec, qexp: float) -> bool:
    """
    Whether the weighted bound on u^(2s-k) is guaranteed.

    Left anchor: b = 0, or s = 1 with b < p/2 - 1 (1 <= q < inf, 1/p + 1/q = 1)
    or b <= -1/2 (q = inf). The right anchor uses a in place of b.
    """
    exponent = spec.params.beta if spec.anchor == -1 else spec.params.alpha
    if exponent == 0.0:
        return True
    if spec.s != 1:
        return False
    if np.isinf(qexp):
        return exponent <= -0.5
    if qexp == 1.0:
        return True
    pconj = qexp / (qexp - 1.0)
    return exponent < pconj / 2.0 - 1.0
