"""
Fourier-Jacobi expansions, partial sums S_n, the smoothed operator V_n and
best-approximation errors.

Coefficients are stored against the orthonormal family p_k = J_k / sqrt(h_k);
the J-basis coefficients f^_k = <f, J_k>/h_k are derived on demand. Partial
sums are evaluated at Chebyshev extrema and converted with the discrete
cosine transform, so no J_k is ever materialized in the monomial basis.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from src.config import get_settings
from src.exceptions import CapExceeded, IndexRange, TailNotResolved
from src.jacobi.poly import MIN_INTERPOLATION_POINTS, Params, Poly, chebyshev_extrema
from src.jacobi.quadrature import Fn, gauss_jacobi, linf_points, lp_norm
from src.jacobi.special import log_h_norm, orthonormal_table
from src.logging_config import get_logger

logger = get_logger(__name__)

# Relative size of the last retained coefficient energy for a resolved tail
TAIL_RESOLUTION = 1e-16


# ============================================================================
# Cached basis tables
# ============================================================================


@lru_cache(maxsize=32)
def _node_table(n: int, p: Params, order: int) -> np.ndarray:
    rule = gauss_jacobi(order, p)
    table = orthonormal_table(n, p, rule.nodes) * rule.weights
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def _extrema_table(n: int, p: Params) -> np.ndarray:
    m = max(2 * n, MIN_INTERPOLATION_POINTS)
    table = orthonormal_table(n, p, chebyshev_extrema(m))
    table.setflags(write=False)
    return table


def orthonormal_sum(ortho: np.ndarray, p: Params) -> Poly:
    """sum_k ortho[k] p_k as a Poly of degree len(ortho) - 1."""
    n = ortho.size - 1
    values = ortho @ _extrema_table(n, p)
    return Poly.from_values(values, n)


# ============================================================================
# Coefficient sequences
# ============================================================================


@dataclass(frozen=True)
class CoeffSeq:
    """
    Fourier-Jacobi coefficients of a function, indices 0..N.

    Attributes:
        params: Weight parameters of the expansion.
        ortho: Orthonormal coefficients c_k = <f, p_k> = f^_k sqrt(h_k).
        log_h: log h_k for k = 0..N.
    """

    params: Params
    ortho: np.ndarray = field(repr=False)
    log_h: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        ortho = np.atleast_1d(np.asarray(self.ortho, dtype=float)).copy()
        log_h = np.atleast_1d(np.asarray(self.log_h, dtype=float)).copy()
        if ortho.shape != log_h.shape:
            raise ValueError("ortho and log_h must have the same length")
        ortho.setflags(write=False)
        log_h.setflags(write=False)
        object.__setattr__(self, "ortho", ortho)
        object.__setattr__(self, "log_h", log_h)

    @classmethod
    def from_coeffs(cls, p: Params, coeffs: np.ndarray) -> "CoeffSeq":
        """Build from J-basis coefficients f^_0..f^_N."""
        coeffs = np.asarray(coeffs, dtype=float)
        log_h = np.atleast_1d(log_h_norm(np.arange(coeffs.size), p))
        return cls(p, coeffs * np.exp(0.5 * log_h), log_h)

    @property
    def N(self) -> int:
        return self.ortho.size - 1

    @property
    def coeffs(self) -> np.ndarray:
        """J-basis coefficients f^_k."""
        return self.ortho * np.exp(-0.5 * self.log_h)

    @property
    def h(self) -> np.ndarray:
        return np.exp(self.log_h)

    @property
    def energy(self) -> float:
        """sum_k f^_k^2 h_k = ||S_N f||^2."""
        return float(np.sum(self.ortho**2))

    @property
    def tail_energy(self) -> np.ndarray:
        """tail_energy[k] = sum_{j > k} f^_j^2 h_j."""
        sq = self.ortho**2
        rev = np.cumsum(sq[::-1])[::-1]
        return np.append(rev[1:], 0.0)

    def truncated(self, n: int) -> "CoeffSeq":
        if n > self.N:
            raise IndexRange("Truncation index beyond coefficients", n=n, N=self.N)
        return CoeffSeq(self.params, self.ortho[: n + 1], self.log_h[: n + 1])

    def __repr__(self) -> str:
        return f"CoeffSeq(params={self.params}, N={self.N})"


def polynomial_degree(f: Fn) -> Optional[int]:
    """Degree of f when it carries its polynomial, ignoring exact trailing zeros."""
    if f.poly is None:
        return None
    return f.poly.trim(0.0).degree


def expand(f: Fn, N: int, p: Params, order: Optional[int] = None) -> CoeffSeq:
    """
    Fourier-Jacobi coefficients f^_0..f^_N by Gauss-Jacobi quadrature.

    Args:
        f: Function to expand.
        N: Highest index; must not exceed the degree cap.
        p: Weight parameters.
        order: Quadrature order (default N + quad_margin). When f carries
            its polynomial the order is raised until the rule integrates
            f p_N exactly, and coefficients above the degree of f are set
            to zero, so f^_k is exact to rounding in the orthonormal
            coefficient rather than amplified by 1 / sqrt(h_k).

    Raises:
        CapExceeded: If N exceeds n_max.

    Example:
        >>> c = expand(Fn.from_poly(Poly(np.array([0.0, 1.0]))), 4, Params(0, 0))
        >>> np.round(c.coeffs, 12).tolist()
        [0.0, 1.0, 0.0, 0.0, 0.0]
    """
    settings = get_settings()
    if N > settings.n_max:
        raise CapExceeded("Expansion degree exceeds the configured cap", N=N, n_max=settings.n_max)
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    order = N + settings.quad_margin if order is None else order
    degree = polynomial_degree(f)
    if degree is not None:
        order = max(order, (degree + N) // 2 + 1)
    rule = gauss_jacobi(order, p)
    ortho = _node_table(N, p, order) @ f(rule.nodes)
    if degree is not None and degree < N:
        ortho[degree + 1 :] = 0.0
    log_h = np.atleast_1d(log_h_norm(np.arange(N + 1), p))
    logger.debug("Expansion computed", fn=f.label, N=N, order=order, params=str(p))
    return CoeffSeq(p, ortho, log_h)


# ============================================================================
# Partial sums and the smoothed operator
# ============================================================================


def partial_sum(c: CoeffSeq, n: int) -> Poly:
    """
    S_n f = sum_{k <= n} f^_k J_k.

    Raises:
        IndexRange: If n > c.N.
    """
    if n < 0 or n > c.N:
        raise IndexRange("Partial-sum index outside the coefficients", n=n, N=c.N)
    return orthonormal_sum(c.ortho[: n + 1], c.params)


def eta_default(t: np.ndarray | float) -> np.ndarray:
    """
    Canonical admissible cutoff: 1 on [0, 1], 0 on [2, inf), smooth step between.

    Example:
        >>> float(eta_default(1.5))
        0.5
    """
    t = np.asarray(t, dtype=float)
    left = 2.0 - t
    right = t - 1.0
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        b_left = np.where(left > 0, np.exp(-1.0 / np.where(left > 0, left, 1.0)), 0.0)
        b_right = np.where(right > 0, np.exp(-1.0 / np.where(right > 0, right, 1.0)), 0.0)
        bridge = b_left / (b_left + b_right)
    return np.where(t <= 1.0, 1.0, np.where(t >= 2.0, 0.0, bridge))


@dataclass(frozen=True)
class Eta:
    """An admissible cutoff evaluator on [0, inf)."""

    func: Callable[[np.ndarray], np.ndarray] = eta_default
    label: str = "exp-bridge"

    def __call__(self, t: np.ndarray | float) -> np.ndarray:
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)


DEFAULT_ETA = Eta()


def vallee_poussin(c: CoeffSeq, n: int, eta: Optional[Eta] = None) -> Poly:
    """
    V_n f = sum_{k <= 2n} eta(k/n) f^_k J_k; V_0 f = S_0 f.

    Preserves polynomials of degree <= n.

    Raises:
        IndexRange: If c.N < 2n.
    """
    if n == 0:
        return partial_sum(c, 0)
    if c.N < 2 * n:
        raise IndexRange("Smoothed sum needs 2n coefficients", n=n, N=c.N)
    eta = DEFAULT_ETA if eta is None else eta
    k = np.arange(2 * n + 1)
    return orthonormal_sum(eta(k / n) * c.ortho[: 2 * n + 1], c.params)


# ============================================================================
# Best-approximation errors
# ============================================================================


def best_error_l2(c: CoeffSeq, n: int, check_tail: bool = True) -> float:
    """
    E_n(f) in L^2(w) from the Parseval tail sum_{n < k <= N} f^_k^2 h_k.

    Raises:
        IndexRange: If n > c.N.
        TailNotResolved: If the last coefficient carries more than
            1e-16 of the total energy.
    """
    if n > c.N:
        raise IndexRange("Error index beyond coefficients", n=n, N=c.N)
    sq = c.ortho**2
    energy = float(np.sum(sq))
    if check_tail and energy > 0 and sq[-1] > TAIL_RESOLUTION * energy:
        raise TailNotResolved(
            "Coefficient tail not resolved",
            N=c.N,
            last=float(sq[-1]),
            energy=energy,
        )
    return float(np.sqrt(np.sum(sq[n + 1 :])))


def best_error_quadrature(f: Fn, n: int, p: Params, order: Optional[int] = None) -> float:
    """||f - S_n f||_{L^2(w)} with both the projection and the norm on a fine rule."""
    order = get_settings().norm_quad_order if order is None else order
    s_n = partial_sum(expand(f, n, p, order=order), n)
    return lp_norm(lambda x: f(x) - s_n(x), 2.0, p, order)


def best_error_surrogate(
    f: Fn,
    n: int,
    pexp: float,
    p: Params,
    eta: Optional[Eta] = None,
    order: Optional[int] = None,
) -> float:
    """
    ||f - V_n f||_{L^p(w)}, within a fixed factor of E_n(f) in L^p(w).

    The expansion and the norm both use the norm_quad_order rule.
    """
    order = get_settings().norm_quad_order if order is None else order
    v_n = vallee_poussin(expand(f, 2 * n, p, order=order), n, eta)
    return lp_norm(lambda x: f(x) - v_n(x), pexp, p, order)


def commute_check(f: Fn, n: int, p: Params, order: Optional[int] = None) -> float:
    """
    Max-grid discrepancy of d/dx S_n^{a,b} f against S_{n-1}^{a+1,b+1} f'.

    Raises:
        MissingDerivative: If f does not declare f'.
    """
    if n < 1:
        raise IndexRange("Commutation needs n >= 1", n=n)
    order = get_settings().quad_order if order is None else order
    lhs = partial_sum(expand(f, n, p, order=order), n).deriv()
    rhs = partial_sum(expand(f.diff(1), n - 1, p.shifted(1), order=order), n - 1)
    grid = linf_points()
    return float(np.max(np.abs(lhs(grid) - rhs(grid))))


def decay_chain_bound(n: int, p: Params) -> float:
    """Sharp constant n / sqrt((n+1)(n+a+b+2)) of the best-error decay chain."""
    return n / np.sqrt((n + 1.0) * (n + p.alpha + p.beta + 2.0))


def decay_chain_ratio(f: Fn, n: int, p: Params, N: Optional[int] = None) -> float:
    """
    n E_n(f)_{a,b} / E_{n-1}(f')_{a+1,b+1}, both from Parseval tails.

    Never exceeds 1 (in fact decay_chain_bound(n, p)) for resolved tails.
    """
    N = get_settings().n_max if N is None else N
    e_f = best_error_l2(expand(f, N, p), n)
    e_df = best_error_l2(expand(f.diff(1), N - 1, p.shifted(1)), n - 1)
    if e_df == 0.0:
        return 0.0
    return n * e_f / e_df


def jackson_ratio(f: Fn, n: int, r: int, p: Params, order: Optional[int] = None) -> float:
    """
    E_n(f) n^r / ||phi^r f^(r)||_{L^2(w)} with phi(x) = sqrt(1 - x^2).

    The weighted norm of phi^r g under w_{a,b} is the norm of g under w_{a+r,b+r}.
    """
    order = get_settings().norm_quad_order if order is None else order
    scale = lp_norm(f.derivative(r), 2.0, p.shifted(r), order)
    if scale == 0.0:
        return 0.0
    return best_error_quadrature(f, n, p, order) * n**r / scale
