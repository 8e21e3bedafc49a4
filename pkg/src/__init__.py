"""
Jacobi/Sobolev approximation toolkit.

This package provides Jacobi expansions, Sobolev orthogonal polynomial bases
and simultaneous-approximation operators, together with suites that verify
their identities and convergence rates numerically.
"""

__version__ = "0.1.0"
