"""
Numerical core: Jacobi polynomials, quadrature, expansions and Sobolev bases.

This package provides:
- Params, Poly: weight parameters and Chebyshev-basis polynomials
- jacobi_P, jacobi_J, h_norm: classical and normalized Jacobi polynomials
- gauss_jacobi, Fn, lp_norm: quadrature rules, functions and weighted norms
- expand, partial_sum, vallee_poussin: Fourier-Jacobi operators
- conn_coeffs: connection coefficients between neighbouring families
- SobolevConfig, cJ, approximant_V: Sobolev bases and approximants
- DualSpec, dual_u: the dual function of the simultaneous estimates

Example:
    >>> import numpy as np
    >>> from src.jacobi import Fn, Params, expand, partial_sum
    >>>
    >>> exp = Fn(np.exp, derivative_factory=lambda k: np.exp, label="exp")
    >>> c = expand(exp, 30, Params(0.5, 0.0))
    >>> s10 = partial_sum(c, 10)
    >>> float(abs(s10(0.2) - np.exp(0.2))) < 1e-9
    True
"""

from src.jacobi.connection import conn_coeffs, main_lemma_residual, sigma_tails, tau
from src.jacobi.duality import DualSpec, bvp_residual, dual_u, pairing_check, ug_bound_ratio
from src.jacobi.expansion import (
    CoeffSeq,
    Eta,
    best_error_l2,
    best_error_surrogate,
    commute_check,
    eta_default,
    expand,
    partial_sum,
    vallee_poussin,
)
from src.jacobi.poly import Params, Poly, deriv_poly
from src.jacobi.quadrature import Fn, QuadRule, gauss_jacobi, hardy_check, inner, lp_norm, wps_norm
from src.jacobi.sobolev import (
    SobolevConfig,
    SobolevSeries,
    approximant_V,
    cJ,
    sobolev_expand,
    sobolev_inner,
    sobolev_partial_sum,
    taylor_remainder_error,
)
from src.jacobi.special import h_norm, jacobi_J, jacobi_J_poly, jacobi_P, pochhammer

__all__ = [
    "CoeffSeq",
    "DualSpec",
    "Eta",
    "Fn",
    "Params",
    "Poly",
    "QuadRule",
    "SobolevConfig",
    "SobolevSeries",
    "approximant_V",
    "best_error_l2",
    "best_error_surrogate",
    "bvp_residual",
    "cJ",
    "commute_check",
    "conn_coeffs",
    "deriv_poly",
    "dual_u",
    "eta_default",
    "expand",
    "gauss_jacobi",
    "h_norm",
    "hardy_check",
    "inner",
    "jacobi_J",
    "jacobi_J_poly",
    "jacobi_P",
    "lp_norm",
    "main_lemma_residual",
    "pairing_check",
    "partial_sum",
    "pochhammer",
    "sigma_tails",
    "sobolev_expand",
    "sobolev_inner",
    "sobolev_partial_sum",
    "tau",
    "taylor_remainder_error",
    "ug_bound_ratio",
    "vallee_poussin",
    "wps_norm",
]
