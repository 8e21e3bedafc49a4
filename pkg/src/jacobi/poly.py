"""
Core value types: Jacobi weight parameters and Chebyshev-basis polynomials.

Poly stores coefficients against Chebyshev polynomials of the first kind on
[-1, 1]. Conversion from point values uses the Chebyshev extrema and a type-I
discrete cosine transform; differentiation and integration use the numpy
Chebyshev recurrences.
"""

from dataclasses import dataclass
from math import factorial
from typing import Callable, Union

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.fft import dct

ArrayLike = Union[float, np.ndarray]

# Smallest interpolation grid used when materializing low-degree polynomials
MIN_INTERPOLATION_POINTS = 32


@dataclass(frozen=True)
class Params:
    """
    Jacobi weight exponents (alpha, beta) of w(x) = (1-x)^alpha (1+x)^beta.

    Evaluation-only code accepts any real pair; weighted integrals require
    both exponents to exceed -1 (see require_weighted).
    """

    alpha: float = 0.0
    beta: float = 0.0

    @property
    def is_weighted(self) -> bool:
        """True when w is integrable on [-1, 1]."""
        return self.alpha > -1 and self.beta > -1

    def require_weighted(self) -> "Params":
        """
        Return self, raising if the weight is not integrable.

        Raises:
            ValueError: If alpha <= -1 or beta <= -1.
        """
        if self.alpha <= -1:
            raise ValueError(f"alpha must exceed -1, got {self.alpha}")
        if self.beta <= -1:
            raise ValueError(f"beta must exceed -1, got {self.beta}")
        return self

    def swapped(self) -> "Params":
        return Params(self.beta, self.alpha)

    def shifted(self, k: float) -> "Params":
        """Return (alpha + k, beta + k)."""
        return Params(self.alpha + k, self.beta + k)

    def weight(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (1.0 - x) ** self.alpha * (1.0 + x) ** self.beta

    def __str__(self) -> str:
        return f"({self.alpha:g},{self.beta:g})"


def chebyshev_extrema(m: int) -> np.ndarray:
    """The m+1 points cos(pi j / m), ordered from 1 down to -1."""
    if m == 0:
        return np.array([1.0])
    return np.cos(np.pi * np.arange(m + 1) / m)


def values_to_coeffs(values: np.ndarray) -> np.ndarray:
    """
    Chebyshev coefficients of the interpolant through values at the extrema.

    Args:
        values: Samples at chebyshev_extrema(len(values) - 1).

    Returns:
        Coefficient vector of the same length.
    """
    values = np.asarray(values, dtype=float)
    m = values.size - 1
    if m == 0:
        return values.copy()
    coeffs = dct(values, type=1) / m
    coeffs[0] /= 2.0
    coeffs[-1] /= 2.0
    return coeffs


@dataclass(frozen=True)
class Poly:
    """
    A polynomial on [-1, 1] in the Chebyshev-T basis.

    Attributes:
        cheb_coeffs: Read-only coefficient vector; degree = len - 1.

    Example:
        >>> q = Poly(np.array([0.0, 1.0]))     # T_1 = x
        >>> q.deriv()(0.3)
        1.0
        >>> q.integ(anchor=-1.0)(1.0)           # x^2/2 - 1/2 at x = 1
        0.0
    """

    cheb_coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.atleast_1d(np.asarray(self.cheb_coeffs, dtype=float)).copy()
        if coeffs.ndim != 1:
            raise ValueError("cheb_coeffs must be a vector")
        if coeffs.size == 0:
            coeffs = np.zeros(1)
        coeffs.setflags(write=False)
        object.__setattr__(self, "cheb_coeffs", coeffs)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(np.zeros(1))

    @classmethod
    def constant(cls, value: float) -> "Poly":
        return cls(np.array([value], dtype=float))

    @classmethod
    def from_values(cls, values: np.ndarray, degree: int | None = None) -> "Poly":
        """Interpolate samples taken at the Chebyshev extrema, truncated to degree."""
        coeffs = values_to_coeffs(values)
        if degree is not None:
            coeffs = coeffs[: degree + 1]
        return cls(coeffs)

    @classmethod
    def interpolate(cls, func: Callable[[np.ndarray], np.ndarray], degree: int) -> "Poly":
        """
        Materialize a degree-`degree` polynomial given as a vectorized callable.

        Samples at max(2*degree, 32) Chebyshev extrema; coefficients above the
        degree are discarded (they are rounding noise for an exact polynomial).
        """
        m = max(2 * degree, MIN_INTERPOLATION_POINTS)
        values = np.asarray(func(chebyshev_extrema(m)), dtype=float)
        return cls.from_values(values, degree)

    @classmethod
    def taylor_monomial(cls, n: int, theta: float) -> "Poly":
        """(x - theta)^n / n!."""
        base = np.array([-theta, 1.0])
        return cls(C.chebpow(base, n) / factorial(n))

    # ------------------------------------------------------------------
    # Evaluation and calculus
    # ------------------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.cheb_coeffs.size - 1

    def __call__(self, x: ArrayLike) -> np.ndarray:
        return C.chebval(np.asarray(x, dtype=float), self.cheb_coeffs)

    def deriv(self, m: int = 1) -> "Poly":
        if m == 0:
            return self
        if m > self.degree:
            return Poly.zero()
        return Poly(C.chebder(self.cheb_coeffs, m))

    def integ(self, m: int = 1, anchor: float = -1.0) -> "Poly":
        """
        m-fold antiderivative whose value and first m-1 derivatives vanish at anchor.
        """
        if m == 0:
            return self
        return Poly(C.chebint(self.cheb_coeffs, m, lbnd=anchor))

    def trim(self, tol: float = 1e-14) -> "Poly":
        """Drop trailing coefficients below tol * max|coeff|."""
        scale = float(np.max(np.abs(self.cheb_coeffs)))
        if scale == 0.0:
            return Poly.zero()
        return Poly(C.chebtrim(self.cheb_coeffs, tol * scale))

    def sup_norm(self, grid: np.ndarray) -> float:
        return float(np.max(np.abs(self(grid))))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Union["Poly", float]) -> "Poly":
        if isinstance(other, Poly):
            return Poly(C.chebadd(self.cheb_coeffs, other.cheb_coeffs))
        return Poly(C.chebadd(self.cheb_coeffs, [float(other)]))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-self.cheb_coeffs)

    def __sub__(self, other: Union["Poly", float]) -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", float]) -> "Poly":
        if isinstance(other, Poly):
            return Poly(C.chebmul(self.cheb_coeffs, other.cheb_coeffs))
        return Poly(self.cheb_coeffs * float(other))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Poly(degree={self.degree})"


def deriv_poly(q: Poly) -> Poly:
    """Exact derivative of a Chebyshev-basis polynomial."""
    return q.deriv()
