"""
Connection coefficients between neighbouring Jacobi families.

J_n^{a+1,b+1} = sum_j C_{n,j} J_j^{a,b} with

    C_{n,j} = (-1)^(j+n) A_j^{a,b} B_n^{a,b} + A_j^{b,a} B_n^{b,a},
    A_j^{a,b} = 2^-j (a+b+2)_{2j} / (a+1)_j,
    B_n^{a,b} = 2^n (a+1)_{n+1} / (a+b+2)_{2n+1},
    D_j^{a,b} = 2 (j+b+1) / ((2j+a+b+2)(2j+a+b+3)).

The dyadic factors make the constants consistent with J_n having leading
coefficient 1/n!. Each constant accepts literal=True, which drops them; the
resulting values belong to the family 2^-n J_n and are used for diagnostics.

A_j and B_n individually overflow and underflow for large indices, so the
module works with their logarithms wherever products are formed.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from src.config import get_settings
from src.exceptions import DegenerateDenominator, IndexRange, TailNotResolved
from src.jacobi.expansion import CoeffSeq, expand, orthonormal_sum, partial_sum
from src.jacobi.poly import Params, Poly
from src.jacobi.quadrature import Fn, linf_points
from src.jacobi.special import LOG2, jacobi_J, log_h_norm, log_pochhammer

# Sigma tails stop after this many consecutive negligible terms
TAIL_RUN = 5
TAIL_RELATIVE = 1e-14


# ============================================================================
# Scalar constants
# ============================================================================


def tau(n: int, p: Params, literal: bool = False) -> float:
    """
    tau_n^{a,b} = 2 (n+b) / ((2n+a+b)(2n+a+b+1)).

    Raises:
        DegenerateDenominator: If a denominator factor vanishes.

    Example:
        >>> round(tau(1, Params(0, 0)), 12)
        0.333333333333
    """
    s = 2.0 * n + p.alpha + p.beta
    denom = s * (s + 1.0)
    if denom == 0.0:
        raise DegenerateDenominator("tau denominator vanishes", n=n, params=str(p))
    value = (n + p.beta) / denom
    return value if literal else 2.0 * value


def promote(n: int, p: Params, which: str = "alpha") -> tuple[float, float]:
    """
    Two-term promotion coefficients.

    which="alpha": J_n^{a,b} = 1 * J_n^{a+1,b} - tau_n^{a,b} J_{n-1}^{a+1,b}.
    which="beta":  J_n^{a,b} = 1 * J_n^{a,b+1} + tau_n^{b,a} J_{n-1}^{a,b+1}.

    Raises:
        IndexRange: If n < 1.
        ValueError: If which is not "alpha" or "beta".
    """
    if n < 1:
        raise IndexRange("Promotion needs n >= 1", n=n)
    if which == "alpha":
        return 1.0, -tau(n, p)
    if which == "beta":
        return 1.0, tau(n, p.swapped())
    raise ValueError(f"which must be 'alpha' or 'beta', got {which!r}")


def log_A(j: int, p: Params, literal: bool = False) -> float:
    _, num = log_pochhammer(p.alpha + p.beta + 2.0, 2 * j)
    _, den = log_pochhammer(p.alpha + 1.0, j)
    value = num - den
    return value if literal else value - j * LOG2


def log_B(n: int, p: Params, literal: bool = False) -> float:
    _, num = log_pochhammer(p.alpha + 1.0, n + 1)
    _, den = log_pochhammer(p.alpha + p.beta + 2.0, 2 * n + 1)
    value = num - den
    return value if literal else value + n * LOG2


def A(j: int, p: Params, literal: bool = False) -> float:
    """A_j^{a,b}; A_0 = 1."""
    p.require_weighted()
    return float(np.exp(log_A(j, p, literal)))


def B(n: int, p: Params, literal: bool = False) -> float:
    """B_n^{a,b}; B_0 = (a+1)/(a+b+2)."""
    p.require_weighted()
    return float(np.exp(log_B(n, p, literal)))


def D(j: int, p: Params, literal: bool = False) -> float:
    """D_j^{a,b} = A_j^{b,a} / A_{j+1}^{b,a}."""
    s = 2.0 * j + p.alpha + p.beta
    denom = (s + 2.0) * (s + 3.0)
    if denom == 0.0:
        raise DegenerateDenominator("D denominator vanishes", j=j, params=str(p))
    value = (j + p.beta + 1.0) / denom
    return value if literal else 2.0 * value


# ============================================================================
# Connection rows
# ============================================================================


@dataclass(frozen=True)
class ConnCoeffs:
    """
    Row n of the connection matrix together with its components.

    Attributes:
        params: (a, b) of the target family J_j^{a,b}.
        n: Row index.
        values: C_{n,0..n}.
        a: A_j^{a,b} for j = 0..n; a_swapped: A_j^{b,a}.
        b, b_swapped: B_n^{a,b}, B_n^{b,a}.
        d, d_swapped: D_n^{a,b}, D_n^{b,a}.
    """

    params: Params
    n: int
    values: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)
    a_swapped: np.ndarray = field(repr=False)
    b: float = 0.0
    b_swapped: float = 0.0
    d: float = 0.0
    d_swapped: float = 0.0

    def composed(self) -> np.ndarray:
        """C_{n,j} recomposed from the stored components."""
        j = np.arange(self.n + 1)
        return (-1.0) ** (j + self.n) * self.a * self.b + self.a_swapped * self.b_swapped


def conn_coeffs(n: int, p: Params) -> ConnCoeffs:
    """
    Row n of J_n^{a+1,b+1} = sum_j C_{n,j} J_j^{a,b}.

    Example:
        >>> conn_coeffs(0, Params(0.3, 0.7)).values.tolist()
        [1.0]
    """
    p.require_weighted()
    q = p.swapped()
    j = np.arange(n + 1)
    log_a = np.array([log_A(int(i), p) for i in j])
    log_a_sw = np.array([log_A(int(i), q) for i in j])
    lb, lb_sw = log_B(n, p), log_B(n, q)
    values = (-1.0) ** (j + n) * np.exp(log_a + lb) + np.exp(log_a_sw + lb_sw)
    values.setflags(write=False)
    return ConnCoeffs(
        params=p,
        n=n,
        values=values,
        a=np.exp(log_a),
        a_swapped=np.exp(log_a_sw),
        b=float(np.exp(lb)),
        b_swapped=float(np.exp(lb_sw)),
        d=D(n, p),
        d_swapped=D(n, q),
    )


def conn_expansion_error(n: int, p: Params, grid: Optional[np.ndarray] = None) -> float:
    """Relative max-grid error of J_n^{a+1,b+1} against its connection sum."""
    grid = linf_points() if grid is None else grid
    target = jacobi_J(n, p.shifted(1), grid)
    row = conn_coeffs(n, p).values
    approx = sum(row[j] * jacobi_J(j, p, grid) for j in range(n + 1))
    scale = float(np.max(np.abs(target)))
    return float(np.max(np.abs(target - approx))) / scale


def _promotion_row(n: int, lead: float, p: Params, alternate: bool) -> np.ndarray:
    k = np.arange(n + 1)
    apb2 = p.alpha + p.beta + 2.0
    _, head = log_pochhammer(lead, n)
    _, den = log_pochhammer(apb2, 2 * n)
    logs = np.array(
        [
            head - den + log_pochhammer(apb2, 2 * int(i))[1] - log_pochhammer(lead, int(i))[1]
            for i in k
        ]
    )
    row = np.exp(logs + (n - k) * LOG2)
    if alternate:
        row = row * (-1.0) ** (n - k)
    return row


def alpha_promotion_row(n: int, p: Params) -> np.ndarray:
    """
    Coefficients of J_n^{a+1,b} = sum_k a_k J_k^{a,b}:
    a_k = (b+1)_n / (a+b+2)_{2n} * (a+b+2)_{2k} / (b+1)_k * 2^(n-k).
    """
    p.require_weighted()
    return _promotion_row(n, p.beta + 1.0, p, alternate=False)


def beta_promotion_row(n: int, p: Params) -> np.ndarray:
    """Coefficients of J_n^{a,b+1} = sum_k b_k J_k^{a,b}, alternating in sign."""
    p.require_weighted()
    return _promotion_row(n, p.alpha + 1.0, p, alternate=True)


def compose_promotions(n: int, p: Params) -> np.ndarray:
    """Row n of the (a,b) -> (a+1,b+1) connection via alpha- then beta-promotion."""
    upper = alpha_promotion_row(n, Params(p.alpha, p.beta + 1.0))
    row = np.zeros(n + 1)
    for k in range(n + 1):
        row[: k + 1] += upper[k] * beta_promotion_row(k, p)
    return row


# ============================================================================
# Sigma tails and the main identity
# ============================================================================


def _tail_terms(c: CoeffSeq, j: int, q: Params, stop: int) -> np.ndarray:
    """f^_{k+1} B_k^{q} for k = j..stop-1, formed in log space."""
    k = np.arange(j, stop)
    log_b = np.array([log_B(int(i), q) for i in k])
    return c.ortho[k + 1] * np.exp(log_b - 0.5 * c.log_h[k + 1])


def _tail_stop(c: CoeffSeq, j: int) -> int:
    """
    First k >= j whose f^_{k+1} opens a run of negligible orthonormal
    coefficients, or N when the last coefficient is negligible.
    """
    threshold = TAIL_RELATIVE * max(np.sqrt(c.energy), np.finfo(float).tiny)
    small = np.abs(c.ortho[j + 1 :]) < threshold
    run = 0
    for i, flag in enumerate(small):
        run = run + 1 if flag else 0
        if run == TAIL_RUN:
            return j + i + 1 - TAIL_RUN
    if small.size and small[-1]:
        return c.N
    raise TailNotResolved("Sigma tail did not settle", j=j, N=c.N, threshold=threshold)


def sigma_tails(c: CoeffSeq, j: int) -> tuple[float, float]:
    """
    Sigma_{1,j} = sum_{k>=j} (-1)^k f^_{k+1} B_k^{a,b} and
    Sigma_{2,j} = sum_{k>=j} f^_{k+1} B_k^{b,a}.

    Summation stops where five consecutive orthonormal coefficients
    f^_{k+1} sqrt(h_{k+1}) fall below 1e-14 ||S_N f||; those coefficients
    are quadrature noise and B_k / sqrt(h_{k+1}) would amplify them.

    Raises:
        TailNotResolved: If no such run exists and the last coefficient is
            not negligible either.
    """
    if j >= c.N:
        raise IndexRange("Sigma tail needs f^_{j+1}", j=j, N=c.N)
    p = c.params
    stop = _tail_stop(c, j)
    t1 = _tail_terms(c, j, p, stop)
    t2 = _tail_terms(c, j, p.swapped(), stop)
    sign = (-1.0) ** np.arange(j, stop)
    return float(np.sum(sign * t1)), float(np.sum(t2))


def sigma_closed_form(g: CoeffSeq, j: int) -> tuple[float, float]:
    """
    Sigma tails from the coefficients g^ of f' in the same family:
    Sigma_1 = (-1)^j B_j^{a,b} (g^_j - D_j^{a,b} g^_{j+1}),
    Sigma_2 = B_j^{b,a} (g^_j + D_j^{b,a} g^_{j+1}).
    """
    if j + 1 > g.N:
        raise IndexRange("Closed form needs g^_{j+1}", j=j, N=g.N)
    p, q = g.params, g.params.swapped()
    gj, gj1 = g.coeffs[j], g.coeffs[j + 1]
    s1 = (-1.0) ** j * B(j, p) * (gj - D(j, p) * gj1)
    s2 = B(j, q) * (gj + D(j, q) * gj1)
    return float(s1), float(s2)


def main_lemma_rhs(
    g: CoeffSeq, n: int, literal: bool = False
) -> Poly:
    """
    Two-term expression for S_{n-1} f' - d/dx S_n f in terms of g^_n, g^_{n+1}.

    literal=True uses the unscaled constants and the opposite sign of the
    g^_{n+1} term.
    """
    p, q = g.params, g.params.swapped()
    if n < 1:
        raise IndexRange("Identity needs n >= 1", n=n)
    if n + 1 > g.N:
        raise IndexRange("Identity needs g^_{n+1}", n=n, N=g.N)
    j = np.arange(n)
    sign = (-1.0) ** (n + j)
    la = np.array([log_A(int(i), p, literal) for i in j])
    la_sw = np.array([log_A(int(i), q, literal) for i in j])
    lb, lb_sw = log_B(n, p, literal), log_B(n, q, literal)
    half_h = 0.5 * np.atleast_1d(log_h_norm(j, p))
    first = sign * np.exp(la + lb + half_h) + np.exp(la_sw + lb_sw + half_h)
    d, d_sw = D(n, p, literal), D(n, q, literal)
    second = -sign * d * np.exp(la + lb + half_h) + d_sw * np.exp(la_sw + lb_sw + half_h)
    if literal:
        second = -second
    gn, gn1 = g.coeffs[n], g.coeffs[n + 1]
    return orthonormal_sum(gn * first + gn1 * second, p)


def main_lemma_residual(
    f: Fn, n: int, p: Params, literal: bool = False, order: Optional[int] = None
) -> float:
    """
    Max-grid residual of S_{n-1} f' - d/dx S_n f against its two-term form.

    Every expansion is taken in the (a, b) family.

    Raises:
        MissingDerivative: If f does not declare f'.
    """
    order = get_settings().quad_order if order is None else order
    g = expand(f.diff(1), n + 1, p, order=order)
    lhs = partial_sum(g, n - 1) - partial_sum(expand(f, n, p, order=order), n).deriv()
    rhs = main_lemma_rhs(g, n, literal)
    grid = linf_points()
    return float(np.max(np.abs(lhs(grid) - rhs(grid))))


# ============================================================================
# Auxiliary identities
# ============================================================================


def cross_symmetry(j: int, p: Params, mixed: bool = False) -> tuple[float, float]:
    """
    Both sides of the cross-parameter product identity.

    The default form A_{j+1}^{a,b} B_j^{a,b} = A_{j+1}^{b,a} B_j^{b,a}
    (both equal (2j+a+b+3)/2) holds for every (a, b); mixed=True returns
    A_{j+1}^{a,b} B_j^{b,a} and A_{j+1}^{b,a} B_j^{a,b}, equal only when a = b.
    """
    q = p.swapped()
    if mixed:
        return (
            float(np.exp(log_A(j + 1, p) + log_B(j, q))),
            float(np.exp(log_A(j + 1, q) + log_B(j, p))),
        )
    return (
        float(np.exp(log_A(j + 1, p) + log_B(j, p))),
        float(np.exp(log_A(j + 1, q) + log_B(j, q))),
    )


def _poch_ratio(a: float, b: float, k: int) -> float:
    sa, la = log_pochhammer(a, k)
    sb, lb = log_pochhammer(b, k)
    return sa * sb * float(np.exp(la - lb))


def finite_sum_identity(j: int, n: int, p: Params, literal: bool = False) -> tuple[float, float]:
    """
    Alternating sum behind the connection-coefficient induction and its closed form.

    lhs = sum_{k=j}^n (-1)^k (2k+a+b+2)/(a+b+2) (a+1)_k/(b+2)_k
    rhs = (-1)^n (a+1)/(a+b+2) (a+2)_n/(b+2)_n
          + (-1)^j (b+1)/(a+b+2) (a+1)_j/(b+1)_j

    literal=True uses the summand factor (2k+a+b) instead, which does not
    match the closed form.
    """
    a, b = p.alpha, p.beta
    apb2 = a + b + 2.0
    shift = 0.0 if literal else 2.0
    lhs = sum(
        (-1.0) ** k * (2.0 * k + a + b + shift) / apb2 * _poch_ratio(a + 1.0, b + 2.0, k)
        for k in range(j, n + 1)
    )
    rhs = (-1.0) ** n * (a + 1.0) / apb2 * _poch_ratio(a + 2.0, b + 2.0, n) + (
        -1.0
    ) ** j * (b + 1.0) / apb2 * _poch_ratio(a + 1.0, b + 1.0, j)
    return float(lhs), float(rhs)


def energy_ratio(n: int, p: Params, swapped: bool = False) -> float:
    """|B_n|^2 / h_n * sum_{j<n} |A_j|^2 h_j with h taken in the (a, b) family."""
    if n < 1:
        raise IndexRange("Energy ratio needs n >= 1", n=n)
    q = p.swapped() if swapped else p
    j = np.arange(n)
    log_h = np.atleast_1d(log_h_norm(j, p))
    terms = np.array([2.0 * log_A(int(i), q) for i in j]) + log_h
    return float(np.exp(2.0 * log_B(n, q) - log_h_norm(n, p) + logsumexp(terms)))


def energy_ratio_closed(n: int, p: Params, swapped: bool = False) -> float:
    """n(n+a)(n+a+1)^2 / ((b+1)(2n+a+b+1)(2n+a+b+2)^2), a and b exchanged if swapped."""
    a, b = (p.beta, p.alpha) if swapped else (p.alpha, p.beta)
    s = 2.0 * n + a + b
    return n * (n + a) * (n + a + 1.0) ** 2 / ((b + 1.0) * (s + 1.0) * (s + 2.0) ** 2)


def d_energy_ratio(n: int, p: Params) -> float:
    """h_n D_n^2 / h_{n+1}; tends to 1."""
    return float(D(n, p) ** 2 * np.exp(log_h_norm(n, p) - log_h_norm(n + 1, p)))


def h_shift_identity(k: int, p: Params) -> tuple[float, float]:
    """(h_{k+1}^{a,b} (k+1)(k+a+b+2), h_k^{a+1,b+1})."""
    lhs = np.exp(log_h_norm(k + 1, p)) * (k + 1.0) * (k + p.alpha + p.beta + 2.0)
    return float(lhs), float(np.exp(log_h_norm(k, p.shifted(1))))
