"""Exact Bayesian open games over finite sets.

Submodules: ``prob`` (distributions and kernels), ``lens`` (coend lenses),
``context``, ``game`` (combinators and equilibria), ``classical`` (Bayesian
games), ``io`` (file formats), ``laws``, ``examples`` and ``cli``.
"""

__version__ = "0.1.0"
