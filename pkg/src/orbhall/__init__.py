"""Exact and numerical companions to quantum Hall physics on hyperbolic orbifolds.

Modules
-------
orbifold    invariants of Sigma(g, nu) and Sym^n(Sigma)
groups      finite groups and G-sets as tables
wreath      wreath products, string-theoretic Euler characteristics, series
series      truncated power series with rational coefficients
hyperbolic  triangle groups, area cocycle, magnetic phases and multipliers
braids      orbifold braid presentations and anyon representations
laughlin    Vandermonde / Laughlin / Pfaffian functions and Schur expansions
selberg     Mehta integral and Monte Carlo estimates
selfcheck   cross-module verification suites
"""

__version__ = "0.1.0"

from .orbifold import OrbifoldSignature, SeifertData, render_rational, satake_euler  # noqa: E402,F401
