"""Exact arithmetic for generalized Hurwitz class numbers.

Binary and ternary quadratic form enumeration, Dirichlet L-values at
s = 0 and s = -1, local-factor products, exact rational q-series, and a
registry of mechanically verified identities connecting them.
"""

from hcn.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
