"""Numerical verification of multiple elliptic integral identities.

Modules: ``specfun`` (K, E, Li2, pFq), ``quadrature`` (tanh-sinh, adaptive
Gauss-Kronrod, principal values, cubature), ``constants`` (G, zeta(3),
Gamma values by independent routes), ``transforms`` (Tricomi, Abel,
Beltrami, Mehler-Dirichlet), ``series`` (moments, recurrences, hyperbolic
sums), ``sphere_mc`` (Monte Carlo on spheres and box cubature),
``catalog`` (the identity registry and suite runner) and ``cli``.
"""

from .errors import DivergenceError, DomainError, NonConvergenceError, QuadratureError

__version__ = "0.1.0"

__all__ = ["DomainError", "DivergenceError", "NonConvergenceError", "QuadratureError", "__version__"]
