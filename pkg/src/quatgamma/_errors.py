"""Exception types shared across the package."""

from __future__ import annotations

__all__ = ["QuadratureError", "NonConvergenceError", "AliasingError", "DecayError"]


class QuadratureError(RuntimeError):
    """A quadrature failed its internal error estimate."""


class NonConvergenceError(RuntimeError):
    """An extrapolation or iteration did not converge to tolerance."""


class AliasingError(ValueError):
    """Grid steps too coarse for the requested window (sampling bound violated)."""


class DecayError(ValueError):
    """A sampled profile has not decayed at the ends of its grid."""
