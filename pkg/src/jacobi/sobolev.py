"""
Sobolev orthogonal polynomials anchored at theta and the simultaneous approximants.

For a configuration (s, theta, (a, b), lambdas) the basis is

    cJ_n = (x - theta)^n / n!                    for n < s,
    cJ_n = s-fold theta-anchored antiderivative of J_{n-s}^{a,b}   for n >= s,

which is orthogonal for

    <f, g>^{-s} = int f^(s) g^(s) w_{a,b} + sum_{k<s} lambda_k f^(k)(theta) g^(k)(theta).

Both the partial sum and the smoothed approximant keep the Taylor data at
theta and integrate a one-variable Jacobi operator applied to f^(s).
"""

from dataclasses import dataclass, field
from math import factorial
from typing import Optional

import numpy as np

from src.config import get_settings
from src.exceptions import CapExceeded, IndexRange
from src.jacobi.expansion import CoeffSeq, Eta, expand, partial_sum, vallee_poussin
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn, inner, linf_points, lp_norm
from src.jacobi.special import h_norm, jacobi_J_extended, jacobi_J_poly


@dataclass(frozen=True)
class SobolevConfig:
    """
    Parameters of the Sobolev inner product.

    Attributes:
        s: Derivative order, 1 <= s <= s_max.
        theta: Anchor point in [-1, 1].
        params: (a, b) of the derivative-term weight.
        lambdas: Positive point-term weights lambda_0..lambda_{s-1};
            defaults to all ones.
    """

    s: int = 1
    theta: float = -1.0
    params: Params = field(default_factory=Params)
    lambdas: Optional[tuple[float, ...]] = None

    def __post_init__(self) -> None:
        s_max = get_settings().s_max
        if not 1 <= self.s <= s_max:
            raise ValueError(f"s must be between 1 and {s_max}, got {self.s}")
        if not -1.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [-1, 1], got {self.theta}")
        self.params.require_weighted()
        lambdas = (1.0,) * self.s if self.lambdas is None else tuple(float(v) for v in self.lambdas)
        if len(lambdas) != self.s:
            raise ValueError(f"expected {self.s} lambdas, got {len(lambdas)}")
        if any(v <= 0 for v in lambdas):
            raise ValueError("lambdas must be positive")
        object.__setattr__(self, "lambdas", lambdas)

    @property
    def weights(self) -> tuple[float, ...]:
        return self.lambdas or ()


def _taylor_poly(values: np.ndarray, theta: float) -> Poly:
    q = Poly.zero()
    for k, value in enumerate(values):
        if value != 0.0:
            q = q + float(value) * Poly.taylor_monomial(k, theta)
    return q


def cJ(n: int, cfg: SobolevConfig) -> Poly:
    """
    The n-th Sobolev orthogonal polynomial for cfg.

    Raises:
        CapExceeded: If n exceeds n_max.

    Example:
        >>> cfg = SobolevConfig(s=3, theta=0.0)
        >>> round(float(cJ(2, cfg)(1.0)), 12)
        0.5
    """
    n_max = get_settings().n_max
    if n > n_max:
        raise CapExceeded("Degree exceeds the configured cap", n=n, n_max=n_max)
    if n < cfg.s:
        return Poly.taylor_monomial(n, cfg.theta)
    return jacobi_J_poly(n - cfg.s, cfg.params).integ(cfg.s, anchor=cfg.theta)


def sobolev_h(n: int, cfg: SobolevConfig) -> float:
    """Squared Sobolev norm of cJ_n: lambda_n for n < s, else h_{n-s}."""
    if n < cfg.s:
        return cfg.weights[n]
    return h_norm(n - cfg.s, cfg.params)


def sobolev_inner(f: Fn, g: Fn, cfg: SobolevConfig, m: Optional[int] = None) -> float:
    """
    <f, g>^{-s} by Gauss-Jacobi quadrature of order m plus the point terms.

    Raises:
        MissingDerivative: If f or g lacks a derivative of order <= s.
    """
    s, theta = cfg.s, cfg.theta
    total = inner(f.diff(s), g.diff(s), cfg.params, m)
    at = np.array([theta])
    for k in range(s):
        total += cfg.weights[k] * float(f.derivative(k)(at)[0]) * float(g.derivative(k)(at)[0])
    return total


def sobolev_gram(n: int, cfg: SobolevConfig) -> np.ndarray:
    """Gram matrix of cJ_0..cJ_n under sobolev_inner, exact quadrature."""
    basis = [Fn.from_poly(cJ(i, cfg), label=f"cJ_{i}") for i in range(n + 1)]
    m = n + 2
    gram = np.empty((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i, n + 1):
            gram[i, j] = gram[j, i] = sobolev_inner(basis[i], basis[j], cfg, m)
    return gram


@dataclass(frozen=True)
class SobolevSeries:
    """
    Truncated Sobolev expansion: Taylor data at theta and the Jacobi
    coefficients of f^(s).
    """

    config: SobolevConfig
    taylor: np.ndarray = field(repr=False)
    tail: CoeffSeq = field(repr=False)

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficients against cJ_0..cJ_{s+N}."""
        return np.concatenate([self.taylor, self.tail.coeffs])

    @property
    def N(self) -> int:
        return self.config.s + self.tail.N


def sobolev_expand(f: Fn, N: int, cfg: SobolevConfig, order: Optional[int] = None) -> SobolevSeries:
    """
    Sobolev coefficients up to index N.

    Raises:
        MissingDerivative: If f lacks derivatives up to s.
        CapExceeded: If N exceeds n_max.
        IndexRange: If N < s.
    """
    n_max = get_settings().n_max
    if N > n_max:
        raise CapExceeded("Expansion degree exceeds the configured cap", N=N, n_max=n_max)
    if N < cfg.s:
        raise IndexRange("Sobolev expansion needs N >= s", N=N, s=cfg.s)
    at = np.array([cfg.theta])
    taylor = np.array([float(f.derivative(k)(at)[0]) for k in range(cfg.s)])
    tail = expand(f.diff(cfg.s), N - cfg.s, cfg.params, order=order)
    return SobolevSeries(cfg, taylor, tail)


def sobolev_partial_sum(ser: SobolevSeries, n: int) -> Poly:
    """
    Taylor part of degree < min(n+1, s) plus the s-fold theta-anchored
    antiderivative of S_{n-s} f^(s).

    Raises:
        IndexRange: If n exceeds s + ser.tail.N.
    """
    s, theta = ser.config.s, ser.config.theta
    if n < 0 or n > ser.N:
        raise IndexRange("Sobolev partial-sum index outside the coefficients", n=n, N=ser.N)
    q = _taylor_poly(ser.taylor[: min(n + 1, s)], theta)
    if n >= s:
        q = q + partial_sum(ser.tail, n - s).integ(s, anchor=theta)
    return q


def approximant_V(
    f: Fn,
    n: int,
    cfg: SobolevConfig,
    eta: Optional[Eta] = None,
    order: Optional[int] = None,
) -> Poly:
    """
    Simultaneous approximant of degree <= 2n + s.

    Its s-th derivative is V_n f^(s) and its derivatives of order < s agree
    with those of f at theta.

    Raises:
        CapExceeded: If 2n + s exceeds n_max.
        MissingDerivative: If f lacks derivatives up to s.
    """
    n_max = get_settings().n_max
    if 2 * n + cfg.s > n_max:
        raise CapExceeded("Approximant degree exceeds the configured cap", n=n, n_max=n_max)
    at = np.array([cfg.theta])
    taylor = np.array([float(f.derivative(k)(at)[0]) for k in range(cfg.s)])
    c = expand(f.diff(cfg.s), 2 * n, cfg.params, order=order)
    smoothed = vallee_poussin(c, n, eta).integ(cfg.s, anchor=cfg.theta)
    return _taylor_poly(taylor, cfg.theta) + smoothed


def taylor_remainder_error(
    f: Fn, q: Poly, cfg: SobolevConfig, pexp: float, m: Optional[int] = None
) -> np.ndarray:
    """||f^(k) - q^(k)||_{L^p(w)} for k = 0..s."""
    out = np.empty(cfg.s + 1)
    for k in range(cfg.s + 1):
        fk, qk = f.derivative(k), q.deriv(k)
        out[k] = lp_norm(lambda x, fk=fk, qk=qk: fk(x) - qk(x), pexp, cfg.params, m)
    return out


def closed_form_check(n: int, s: int, beta: float) -> tuple[float, float]:
    """
    Relative discrepancies of cJ_n at theta = 1, alpha = 0 against
    (-1)^s (n-s)!/n! (1-x)^s J_{n-s}^{s, beta-s}      (returned first) and
    (-1)^s (n-s)!/n! (1-x)^s J_{n-s}^{0, beta}        (returned second).

    Only the first form is an identity.
    """
    if n < s:
        raise IndexRange("Closed form needs n >= s", n=n, s=s)
    cfg = SobolevConfig(s=s, theta=1.0, params=Params(0.0, beta))
    target = cJ(n, cfg)
    grid = linf_points()
    scale = (-1.0) ** s * factorial(n - s) / factorial(n) * (1.0 - grid) ** s
    expected = scale * jacobi_J_extended(n - s, Params(float(s), beta - s))(grid)
    unshifted = scale * jacobi_J_extended(n - s, Params(0.0, beta))(grid)
    values = target(grid)
    norm = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    return (
        float(np.max(np.abs(values - expected))) / norm,
        float(np.max(np.abs(values - unshifted))) / norm,
    )
