"""
Gauss-Jacobi rules, weighted L^p / W^s_p norms, inner products and the Hardy check.

Rules come from the Golub-Welsch eigenvalue problem on the orthonormal Jacobi
matrix and are cached per (order, params); cached arrays are read-only so the
cache can be shared between threads.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.integrate import quad
from scipy.linalg import LinAlgError, eigh_tridiagonal

from src.config import get_settings
from src.exceptions import EigenFailure, MissingDerivative
from src.jacobi.poly import Params, Poly
from src.jacobi.special import log_h_zero, recurrence_coefficients

Evaluator = Callable[[np.ndarray], np.ndarray]


# ============================================================================
# Functions with declared derivatives
# ============================================================================


@dataclass(frozen=True)
class Fn:
    """
    A vectorized evaluator on [-1, 1] with optional exact derivatives.

    Attributes:
        f: The function itself.
        derivatives: derivatives[k-1] evaluates f^(k).
        derivative_factory: Optional k -> evaluator for arbitrary order;
            takes precedence over the tuple.
        poly: Set when the function is a polynomial; enables exact integration.
        label: Short description used in logs and reports.

    Example:
        >>> exp = Fn(np.exp, derivative_factory=lambda k: np.exp, label="exp")
        >>> float(exp.diff(3)(0.0))
        1.0
    """

    f: Evaluator
    derivatives: tuple[Evaluator, ...] = ()
    derivative_factory: Optional[Callable[[int], Evaluator]] = None
    poly: Optional[Poly] = None
    label: str = "f"

    @classmethod
    def from_poly(cls, q: Poly, label: str = "poly") -> "Fn":
        return cls(q, derivative_factory=lambda k: q.deriv(k), poly=q, label=label)

    @classmethod
    def constant(cls, value: float) -> "Fn":
        return cls.from_poly(Poly.constant(value), label=f"const:{value:g}")

    @property
    def order(self) -> float:
        """Highest declared derivative order (inf for polynomials and factories)."""
        if self.derivative_factory is not None:
            return float("inf")
        return float(len(self.derivatives))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.asarray(self.f(x), dtype=float), x.shape).astype(float)

    def derivative(self, k: int) -> Evaluator:
        """
        Evaluator of f^(k).

        Raises:
            MissingDerivative: If order k is not declared.
        """
        if k == 0:
            return self.f
        if self.derivative_factory is not None:
            return self.derivative_factory(k)
        if k <= len(self.derivatives):
            return self.derivatives[k - 1]
        raise MissingDerivative(
            "Function does not declare this derivative", label=self.label, order=k
        )

    def diff(self, k: int = 1) -> "Fn":
        """The k-th derivative as an Fn carrying the remaining declared derivatives."""
        if k == 0:
            return self
        head = self.derivative(k)
        if self.poly is not None:
            return Fn.from_poly(self.poly.deriv(k), label=f"{self.label}^({k})")
        factory = self.derivative_factory
        if factory is not None:
            return Fn(
                head, derivative_factory=lambda j: factory(j + k), label=f"{self.label}^({k})"
            )
        return Fn(head, derivatives=self.derivatives[k:], label=f"{self.label}^({k})")

    def reflected(self) -> "Fn":
        """x -> f(-x), derivatives carrying the (-1)^k factor."""
        if self.poly is not None:
            coeffs = self.poly.cheb_coeffs * (-1.0) ** np.arange(self.poly.degree + 1)
            return Fn.from_poly(Poly(coeffs), label=f"{self.label}(-x)")

        def flip(k: int) -> Evaluator:
            ev = self.derivative(k)
            return lambda x: (-1.0) ** k * np.asarray(ev(-np.asarray(x)), dtype=float)

        if self.derivative_factory is not None:
            return Fn(flip(0), derivative_factory=flip, label=f"{self.label}(-x)")
        derivs = tuple(flip(k) for k in range(1, len(self.derivatives) + 1))
        return Fn(flip(0), derivatives=derivs, label=f"{self.label}(-x)")


def linear_combination(a: float, f: Fn, b: float, g: Fn) -> Fn:
    """a f + b g, keeping derivatives both functions declare."""
    if f.poly is not None and g.poly is not None:
        return Fn.from_poly(a * f.poly + b * g.poly, label=f"{a:g}*{f.label}+{b:g}*{g.label}")

    def combo(k: int) -> Evaluator:
        fk, gk = f.derivative(k), g.derivative(k)
        return lambda x: a * np.asarray(fk(x), dtype=float) + b * np.asarray(gk(x), dtype=float)

    order = min(f.order, g.order)
    label = f"{a:g}*{f.label}+{b:g}*{g.label}"
    if order == float("inf"):
        return Fn(combo(0), derivative_factory=combo, label=label)
    return Fn(combo(0), derivatives=tuple(combo(k) for k in range(1, int(order) + 1)), label=label)


# ============================================================================
# Gauss-Jacobi rules
# ============================================================================


@dataclass(frozen=True)
class QuadRule:
    """
    Gauss-Jacobi nodes and weights for w_{a,b} on [-1, 1].

    Attributes:
        params: Weight parameters.
        order: Number of nodes m; exact for polynomials of degree <= 2m-1.
        nodes: Strictly increasing nodes in (-1, 1).
        weights: Positive weights summing to the zeroth moment.
    """

    params: Params
    order: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be at least 1, got {self.order}")
        if self.nodes.shape != (self.order,) or self.weights.shape != (self.order,):
            raise ValueError("nodes and weights must both have length equal to order")

    def integrate(self, values: np.ndarray) -> float:
        """Weighted node sum; numpy's pairwise summation keeps rounding low."""
        return float(np.sum(self.weights * values))

    def on_interval(self, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
        """
        Nodes and weights mapped affinely to [lo, hi].

        The weight factor (hi-x)^a (x-lo)^b is absorbed, with the Jacobian and
        the ((hi-lo)/2)^(a+b) scaling folded into the returned weights.
        """
        half = 0.5 * (hi - lo)
        x = lo + half * (self.nodes + 1.0)
        scale = half ** (1.0 + self.params.alpha + self.params.beta)
        return x, self.weights * scale


@lru_cache(maxsize=128)
def gauss_jacobi(m: int, p: Params) -> QuadRule:
    """
    Gauss-Jacobi rule of order m by Golub-Welsch.

    Raises:
        ValueError: If m < 1 or the weight is not integrable.
        EigenFailure: If the tridiagonal eigen-solve fails.

    Example:
        >>> rule = gauss_jacobi(2, Params(0, 0))
        >>> np.round(rule.nodes * np.sqrt(3), 12).tolist()
        [-1.0, 1.0]
    """
    if m < 1:
        raise ValueError(f"order must be at least 1, got {m}")
    p.require_weighted()
    diag, off = recurrence_coefficients(m, p)
    mu0 = float(np.exp(log_h_zero(p)))
    if m == 1:
        nodes = np.array([diag[0]])
        weights = np.array([mu0])
    else:
        try:
            nodes, vecs = eigh_tridiagonal(np.array(diag), np.array(off))
        except LinAlgError as exc:
            raise EigenFailure("Golub-Welsch eigen-solve failed", order=m, params=str(p)) from exc
        weights = mu0 * vecs[0] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadRule(params=p, order=m, nodes=nodes, weights=weights)


def gauss_legendre(m: int) -> QuadRule:
    return gauss_jacobi(m, Params(0.0, 0.0))


# ============================================================================
# Inner products and norms
# ============================================================================


def _resolve_order(m: Optional[int]) -> int:
    return get_settings().norm_quad_order if m is None else m


def inner(f: Fn, g: Fn, p: Params, m: Optional[int] = None) -> float:
    """<f, g>_{a,b} by Gauss-Jacobi quadrature of order m."""
    rule = gauss_jacobi(_resolve_order(m), p)
    return rule.integrate(f(rule.nodes) * g(rule.nodes))


def linf_points(m: Optional[int] = None, p: Optional[Params] = None) -> np.ndarray:
    """Uniform grid including +-1, merged with quadrature nodes when given."""
    grid = np.linspace(-1.0, 1.0, get_settings().linf_grid)
    if m is None or p is None:
        return grid
    return np.union1d(grid, gauss_jacobi(m, p).nodes)


def lp_norm(f: Evaluator, pexp: float, p: Params, m: Optional[int] = None) -> float:
    """
    ||f||_{L^p(w_{a,b})}; pexp = inf takes the max over nodes and a uniform grid.

    Example:
        >>> round(lp_norm(lambda x: x, 2.0, Params(0, 0), 4), 12) == round(np.sqrt(2/3), 12)
        True
    """
    if pexp < 1:
        raise ValueError(f"pexp must be at least 1, got {pexp}")
    order = _resolve_order(m)
    if np.isinf(pexp):
        pts = linf_points(order, p)
        return float(np.max(np.abs(np.asarray(f(pts), dtype=float))))
    rule = gauss_jacobi(order, p)
    values = np.abs(np.broadcast_to(np.asarray(f(rule.nodes), dtype=float), rule.nodes.shape))
    return rule.integrate(values**pexp) ** (1.0 / pexp)


def combine_lp(norms: list[float], pexp: float) -> float:
    """l^p combination of per-derivative norms (max for pexp = inf)."""
    arr = np.asarray(norms, dtype=float)
    if arr.size == 0:
        return 0.0
    if np.isinf(pexp):
        return float(np.max(arr))
    return float(np.sum(arr**pexp) ** (1.0 / pexp))


def wps_norm(f: Fn, s: int, pexp: float, p: Params, m: Optional[int] = None) -> float:
    """
    Sobolev norm (sum_k ||f^(k)||^p)^(1/p) over k = 0..s.

    Raises:
        MissingDerivative: If f does not declare s derivatives.
    """
    norms = [lp_norm(f.derivative(k), pexp, p, m) for k in range(s + 1)]
    return combine_lp(norms, pexp)


# ============================================================================
# Hardy inequality
# ============================================================================


def _abs_antiderivative_poly(q: Poly, x: np.ndarray) -> np.ndarray:
    """int_{-1}^x |q(t)| dt exactly, splitting at the real roots of q."""
    anti = q.integ(1, anchor=-1.0)
    if q.degree >= 1 and np.any(q.cheb_coeffs[1:]):
        roots = C.chebroots(q.trim().cheb_coeffs)
        roots = np.sort(roots[(np.abs(roots.imag) < 1e-12) & (np.abs(roots.real) < 1.0)].real)
    else:
        roots = np.array([])
    breaks = np.concatenate(([-1.0], roots, [1.0]))
    mids = 0.5 * (breaks[:-1] + breaks[1:])
    signs = np.sign(q(mids))
    # cumulative |integral| at each break
    pieces = signs * (anti(breaks[1:]) - anti(breaks[:-1]))
    cumulative = np.concatenate(([0.0], np.cumsum(pieces)))
    idx = np.clip(np.searchsorted(breaks, x, side="right") - 1, 0, signs.size - 1)
    return cumulative[idx] + signs[idx] * (anti(x) - anti(breaks[idx]))


def _abs_antiderivative_panels(f: Fn, x: np.ndarray) -> np.ndarray:
    """int_{-1}^x |f| at sorted points via adaptive panels between them."""
    tol = get_settings().panel_tol
    edges = np.concatenate(([-1.0], x))
    pieces = np.empty(x.size)
    for i in range(x.size):
        pieces[i], _ = quad(
            lambda t: abs(float(f(np.array(t)))),
            edges[i],
            edges[i + 1],
            epsabs=0.0,
            epsrel=tol,
            limit=200,
        )
    return np.cumsum(pieces)


def hardy_check(
    f: Fn, pexp: float, p: Params, m: Optional[int] = None
) -> tuple[float, float]:
    """
    Both sides of the weighted Hardy inequality.

    lhs = || x -> int_{-1}^x |f(t)| dt ||_{L^p(w)}, rhs = ||f||_{L^p(w)}.
    The inequality lhs <= c rhs holds for some c iff beta < pexp - 1.

    Args:
        f: Integrand; polynomial inputs are integrated exactly.
        pexp: Exponent in (1, inf).
        p: Weight parameters.
        m: Order of the outer Gauss-Jacobi rule; its nodes also delimit the
            inner panels (default hardy_panels).
    """
    if not 1 < pexp < np.inf:
        raise ValueError(f"hardy_check needs 1 < pexp < inf, got {pexp}")
    rule = gauss_jacobi(get_settings().hardy_panels if m is None else m, p)
    x = rule.nodes
    if f.poly is not None:
        inner_values = _abs_antiderivative_poly(f.poly, x)
    else:
        inner_values = _abs_antiderivative_panels(f, x)
    lhs = rule.integrate(np.abs(inner_values) ** pexp) ** (1.0 / pexp)
    rhs = rule.integrate(np.abs(f(x)) ** pexp) ** (1.0 / pexp)
    return float(lhs), float(rhs)
