"""Helpers shared by the invariant suites."""

import numpy as np

from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn
from src.jacobi.special import jacobi_J_poly

# {-0.5, 0, 0.3, 1}^2
PARAM_GRID: tuple[Params, ...] = tuple(
    Params(a, b) for a in (-0.5, 0.0, 0.3, 1.0) for b in (-0.5, 0.0, 0.3, 1.0)
)

SMALL_GRID: tuple[Params, ...] = (
    Params(0.0, 0.0),
    Params(0.5, -0.5),
    Params(-0.3, 0.7),
    Params(1.0, 0.0),
)


def rel_err(value: np.ndarray | float, expected: np.ndarray | float) -> float:
    """max|value - expected| / max(max|expected|, tiny)."""
    value = np.asarray(value, dtype=float)
    expected = np.asarray(expected, dtype=float)
    scale = max(float(np.max(np.abs(expected))), np.finfo(float).tiny)
    return float(np.max(np.abs(value - expected))) / scale


def random_poly(rng: np.random.Generator, degree: int) -> Poly:
    """Chebyshev coefficients uniform in [-1, 1]."""
    return Poly(rng.uniform(-1.0, 1.0, degree + 1))


def random_jacobi_combo(rng: np.random.Generator, degree: int, p: Params) -> Fn:
    """sum_k c_k p_k-scaled J_k with c uniform in [-1, 1]; values stay O(1)."""
    total = Poly.zero()
    for k in range(degree + 1):
        q = jacobi_J_poly(k, p)
        scale = float(np.max(np.abs(q.cheb_coeffs))) or 1.0
        total = total + rng.uniform(-1.0, 1.0) / scale * q
    return Fn.from_poly(total, label=f"combo{degree}")


def label(p: Params) -> str:
    return f"a={p.alpha:g} b={p.beta:g}"


def random_sobolev_poly(rng: np.random.Generator, degree: int, s: int, theta: float) -> Poly:
    """Taylor data at theta and an s-th derivative with Chebyshev coefficients in [-1, 1]."""
    q = random_poly(rng, degree - s).integ(s, anchor=theta)
    for k, value in enumerate(rng.uniform(-1.0, 1.0, s)):
        q = q + float(value) * Poly.taylor_monomial(k, theta)
    return q
