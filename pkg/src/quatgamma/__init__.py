"""Quaternionic Gamma factors and the conductor operator.

Core objects: the Gamma factor family ``gamma_N(s)``, the multiplicative
spectral line (log-profile / spectral-profile transform pair), the Fourier
and conductor operators on isotypic components, a brute-force 4D Fourier
oracle, and truncated-trace asymptotics.
"""

from __future__ import annotations

from ._errors import QuadratureError, NonConvergenceError, AliasingError, DecayError

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "QuadratureError",
    "NonConvergenceError",
    "AliasingError",
    "DecayError",
]
