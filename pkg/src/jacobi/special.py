"""
Jacobi polynomials, the J_n normalization, norm constants and Pochhammer ratios.

J_n^{a,b} = 2^n / (n+a+b+1)_n * P_n^{(a,b)} has leading coefficient 1/n! and
satisfies d/dx J_n^{a,b} = J_{n-1}^{a+1,b+1}. Its squared norm is

    h_n = 2^(2n+a+b+1)/(2n+a+b+1) * G(n+a+1) G(n+b+1) G(n+a+b+1)
          / (n! G(2n+a+b+1)^2)

which is 4^n times the value obtained without the dyadic factor
(h_norm(..., literal=True) returns that smaller value for comparison).

Internally expansions use the orthonormal family p_n = J_n / sqrt(h_n),
generated by the symmetric Jacobi-matrix recurrence, because J_n and h_n
underflow long before the degree cap.
"""

from functools import lru_cache
from math import lgamma, log

import numpy as np
from scipy.special import gammaln

from src.config import get_settings
from src.exceptions import CapExceeded, DegenerateRecurrence
from src.jacobi.poly import ArrayLike, Params, Poly

LOG2 = log(2.0)


# ============================================================================
# Pochhammer symbols
# ============================================================================


def pochhammer(a: float, n: int) -> float:
    """
    Rising factorial (a)_n = a (a+1) ... (a+n-1); 1 for n = 0.

    Example:
        >>> pochhammer(0.5, 2)
        0.75
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    result = 1.0
    for i in range(n):
        result *= a + i
    return result


def log_pochhammer(a: float, n: int) -> tuple[float, float]:
    """
    Sign and log-magnitude of (a)_n.

    Returns:
        (sign, log|(a)_n|); sign is 0.0 and the log is -inf when a factor vanishes.
    """
    if n == 0:
        return 1.0, 0.0
    if a > 0:
        return 1.0, lgamma(a + n) - lgamma(a)
    sign = 1.0
    total = 0.0
    for i in range(n):
        factor = a + i
        if factor == 0.0:
            return 0.0, float("-inf")
        if factor < 0:
            sign = -sign
        total += log(abs(factor))
    return sign, total


# ============================================================================
# Classical and normalized Jacobi polynomials
# ============================================================================


def jacobi_P(n: int, p: Params, x: ArrayLike) -> np.ndarray:
    """
    Classical Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.

    Works for any real (a, b) whose recurrence denominators are nonzero.

    Raises:
        DegenerateRecurrence: If a recurrence denominator vanishes.

    Example:
        >>> float(jacobi_P(3, Params(1, 0), 1.0))
        4.0
    """
    a, b = p.alpha, p.beta
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    apb = a + b
    p_cur = 0.5 * (a - b + (apb + 2.0) * x)
    for k in range(2, n + 1):
        a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        if a1 == 0.0:
            raise DegenerateRecurrence(
                "Jacobi recurrence denominator vanished", n=k, alpha=a, beta=b
            )
        a2 = (2.0 * k + apb - 1.0) * (a * a - b * b)
        a3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb)
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb)
        p_prev, p_cur = p_cur, ((a2 + a3 * x) * p_cur - a4 * p_prev) / a1
    return p_cur


def log_j_scale(n: int, p: Params) -> tuple[float, float]:
    """Sign and log of the factor 2^n / (n+a+b+1)_n."""
    sign, log_poch = log_pochhammer(n + p.alpha + p.beta + 1.0, n)
    if sign == 0.0:
        raise DegenerateRecurrence(
            "Normalization (n+a+b+1)_n vanishes", n=n, alpha=p.alpha, beta=p.beta
        )
    return sign, n * LOG2 - log_poch


def jacobi_J(n: int, p: Params, x: ArrayLike) -> np.ndarray:
    """
    Normalized Jacobi polynomial J_n^{a,b}(x) with leading coefficient 1/n!.

    Example:
        >>> round(float(jacobi_J(2, Params(0, 0), 1.0)), 12)
        0.333333333333
    """
    if n == 0:
        return np.ones_like(np.asarray(x, dtype=float))
    sign, log_scale = log_j_scale(n, p)
    return sign * np.exp(log_scale) * jacobi_P(n, p, x)


def jacobi_J_value_at_one(m: int, p: Params) -> float:
    """J_m^{a,b}(1) = 2^m (a+1)_m / ((m+a+b+1)_m m!), for any real (a, b)."""
    if m == 0:
        return 1.0
    s_num, l_num = log_pochhammer(p.alpha + 1.0, m)
    if s_num == 0.0:
        return 0.0
    s_den, l_scale = log_j_scale(m, p)
    return s_num * s_den * float(np.exp(l_num + l_scale - lgamma(m + 1.0)))


def _cap(n: int) -> None:
    n_max = get_settings().n_max
    if n > n_max:
        raise CapExceeded("Degree exceeds the configured cap", n=n, n_max=n_max)


def jacobi_J_poly(n: int, p: Params) -> Poly:
    """
    Materialize J_n^{a,b} in the Chebyshev basis.

    Raises:
        CapExceeded: If n exceeds the configured degree cap.
    """
    _cap(n)
    return Poly.interpolate(lambda x: jacobi_J(n, p, x), n)


def jacobi_J_extended(n: int, p: Params) -> Poly:
    """
    J_n^{a,b} for arbitrary real (a, b), including parameters at or below -1.

    The three-term recurrence is used at the lowest level m it reaches without
    a vanishing denominator, for J_{n-m}^{a+m,b+m}; the remaining m levels are
    antiderivatives taking the value J_k^{a+n-k,b+n-k}(1) at x = 1. For
    classical parameters m = 0 and the result is jacobi_J_poly.
    """
    _cap(n)
    m, q = n, Poly.constant(1.0)
    for level in range(n):
        top = p.shifted(level)
        try:
            q = Poly.interpolate(lambda x, t=top, d=n - level: jacobi_J(d, t, x), n - level)
        except DegenerateRecurrence:
            continue
        m = level
        break
    for k in range(n - m + 1, n + 1):
        q = q.integ(1, anchor=1.0) + jacobi_J_value_at_one(k, p.shifted(n - k))
    return q


# ============================================================================
# Norm constants
# ============================================================================


def log_h_zero(p: Params) -> float:
    """log of the zeroth moment 2^(a+b+1) B(a+1, b+1)."""
    a, b = p.alpha, p.beta
    return (a + b + 1.0) * LOG2 + lgamma(a + 1.0) + lgamma(b + 1.0) - lgamma(a + b + 2.0)


def log_h_norm(n: int | np.ndarray, p: Params, literal: bool = False) -> np.ndarray:
    """
    log h_n^{a,b}, vectorized over n.

    Args:
        n: Degree or array of degrees.
        p: Weight parameters (a, b > -1).
        literal: Drop the 4^n factor (diagnostic only).
    """
    p.require_weighted()
    a, b = p.alpha, p.beta
    n_arr = np.atleast_1d(np.asarray(n, dtype=float))
    out = np.empty_like(n_arr)
    zero = n_arr == 0
    out[zero] = log_h_zero(p)
    k = n_arr[~zero]
    out[~zero] = (
        (2 * k + a + b + 1) * LOG2
        - np.log(2 * k + a + b + 1)
        + gammaln(k + a + 1)
        + gammaln(k + b + 1)
        + gammaln(k + a + b + 1)
        - gammaln(k + 1)
        - 2 * gammaln(2 * k + a + b + 1)
    )
    if literal:
        out = out - 2 * n_arr * LOG2
    if np.ndim(n) == 0:
        return out[0]
    return out


def h_norm(n: int, p: Params, literal: bool = False) -> float:
    """
    Squared norm h_n = <J_n, J_n> in L^2(w_{a,b}).

    Example:
        >>> round(h_norm(1, Params(0, 0)), 12)
        0.666666666667
    """
    return float(np.exp(log_h_norm(n, p, literal=literal)))


def p_norm_sq(n: int, p: Params) -> float:
    """Squared weighted norm of the classical P_n^{(a,b)}."""
    a, b = p.alpha, p.beta
    if n == 0:
        return float(np.exp(log_h_zero(p)))
    value = (
        (a + b + 1) * LOG2
        - log(2 * n + a + b + 1)
        + lgamma(n + a + 1)
        + lgamma(n + b + 1)
        - lgamma(n + 1)
        - lgamma(n + a + b + 1)
    )
    return float(np.exp(value))


# ============================================================================
# Orthonormal recurrence
# ============================================================================


@lru_cache(maxsize=256)
def recurrence_coefficients(n: int, p: Params) -> tuple[np.ndarray, np.ndarray]:
    """
    Symmetric Jacobi-matrix coefficients for w_{a,b}.

    Returns:
        (diag, offdiag): diag[k] = a_k for k < n and offdiag[k] = b_{k+1} for
        k < n - 1, so that b_{k+1} p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
        Both arrays are read-only.
    """
    p.require_weighted()
    a, b = p.alpha, p.beta
    k = np.arange(n, dtype=float)
    s = 2.0 * k + a + b
    diag = np.empty(n)
    if n:
        diag[0] = (b - a) / (a + b + 2.0)
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2.0))

    j = np.arange(1, n, dtype=float)
    t = 2.0 * j + a + b
    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = np.sqrt(4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) ** 2 * (3.0 + a + b)))
        jj, tt = j[1:], t[1:]
        off[1:] = np.sqrt(
            4.0 * jj * (jj + a) * (jj + b) * (jj + a + b) / (tt**2 * (tt + 1.0) * (tt - 1.0))
        )
    diag.setflags(write=False)
    off.setflags(write=False)
    return diag, off


def orthonormal_table(n: int, p: Params, x: ArrayLike) -> np.ndarray:
    """
    Values of p_0..p_n at the points x, shape (n+1, len(x)).

    p_k = J_k / sqrt(h_k) are orthonormal in L^2(w_{a,b}).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    diag, off = recurrence_coefficients(n + 1, p)
    table = np.empty((n + 1, x.size))
    table[0] = np.exp(-0.5 * log_h_zero(p))
    if n >= 1:
        table[1] = (x - diag[0]) * table[0] / off[0]
    for k in range(1, n):
        table[k + 1] = ((x - diag[k]) * table[k] - off[k - 1] * table[k - 1]) / off[k]
    return table
