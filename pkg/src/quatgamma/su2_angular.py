"""Angular layer on the unit quaternions (class functions on SU(2)).

A unit quaternion g0 has class angle theta in [0, pi] with cos(theta) equal
to its scalar part.  Class functions are integrated against the density
(2/pi)*sin(theta)^2 on [0, pi], which has total mass 1 and makes the
characters chi_N orthonormal; both facts are enforced by tests rather than
assumed.

``angular_bessel(N, rho)`` is the oscillatory class integral

    (2/pi) * int_0^pi exp(-4*pi*i*rho*cos(theta)) chi_N(theta) sin^2(theta) dtheta,

the angular factor produced when a 4D Fourier integral against
exp(-4*pi*i*Re(x*y)) is reduced to polar coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ._errors import QuadratureError
from .quat_core import Quaternion, reduced_norm

__all__ = [
    "character",
    "monomial",
    "AngularQuadrature",
    "angular_quadrature",
    "angular_bessel",
]

ArrayLike = Union[float, np.ndarray]


def character(N: int, theta: ArrayLike) -> ArrayLike:
    """Character of the (N+1)-dimensional irreducible representation.

    chi_N(theta) = sin((N+1)*theta)/sin(theta), evaluated through the
    Chebyshev-U recurrence in cos(theta), which is stable and needs no
    special-casing at theta = 0 or pi (limits +-(N+1) come out exactly).
    """
    if N < 0:
        raise ValueError("angular mode N must be >= 0")
    c = np.cos(theta)
    u_prev = np.ones_like(c)
    if N == 0:
        return u_prev if isinstance(theta, np.ndarray) else 1.0
    u = 2.0 * c
    for _ in range(N - 1):
        u_prev, u = u, 2.0 * c * u - u_prev
    return u


def monomial(N: int, j: int, g0: Quaternion) -> complex:
    """Monomial basis element a^j * b^(N-j) of the degree-N sector,
    where g0 = a + b*j in complex coordinates.

    Only used by brute-force oracle checks; operators act on class
    functions.
    """
    if not 0 <= j <= N:
        raise ValueError(f"need 0 <= j <= N, got j={j}, N={N}")
    if abs(reduced_norm(g0) - 1.0) > 1e-10:
        raise ValueError("monomial requires a unit quaternion")
    a, b = g0.complex_pair
    return a**j * b ** (N - j)


# ------------------------------------------------------------ class quadrature


@dataclass(frozen=True)
class AngularQuadrature:
    """Gauss-Legendre nodes in (0, pi) with the class-measure density
    (2/pi)*sin^2(theta) folded into the weights.

    integrate(values) approximates the integral of a class function
    against d*g0; weights sum to 1 (total mass) up to quadrature error.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> complex:
        return np.tensordot(values, self.weights, axes=(values.ndim - 1, 0))

    def inner(self, f_values: np.ndarray, g_values: np.ndarray) -> complex:
        """<f, g> = int f * conj(g) d*g0 under this quadrature."""
        return self.integrate(f_values * np.conjugate(g_values))


def angular_quadrature(n_nodes: int = 64) -> AngularQuadrature:
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    theta = 0.5 * np.pi * (x + 1.0)
    w = 0.5 * np.pi * w * (2.0 / np.pi) * np.sin(theta) ** 2
    return AngularQuadrature(nodes=theta, weights=w)


# -------------------------------------------------------- oscillatory integral


def _bessel_at(N: int, rho: np.ndarray, quad: AngularQuadrature) -> np.ndarray:
    chi = character(N, quad.nodes)
    phases = np.exp(-4j * np.pi * np.multiply.outer(rho, np.cos(quad.nodes)))
    return phases @ (quad.weights * chi)


def angular_bessel(N: int, rho: ArrayLike, tol: float = 1e-10) -> ArrayLike:
    """Oscillatory class integral of exp(-4*pi*i*rho*cos(theta)) against chi_N.

    Real for even N, purely imaginary for odd N (theta -> pi - theta parity);
    bounded by N+1; at rho = 0 it collapses to <chi_N, chi_0> = [N == 0].

    Node count doubles until two successive resolutions agree within tol
    (absolute, the values are O(N+1)); the starting count scales with rho so
    large arguments resolve their ~4*rho oscillations.
    """
    rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho_arr < 0):
        raise ValueError("angular_bessel requires rho >= 0")
    n = 64
    rho_max = float(rho_arr.max())
    while n < 16.0 * (rho_max + 1.0):
        n *= 2
    prev = _bessel_at(N, rho_arr, angular_quadrature(n))
    for _ in range(8):
        n *= 2
        cur = _bessel_at(N, rho_arr, angular_quadrature(n))
        if np.max(np.abs(cur - prev)) <= tol:
            out = cur
            break
        prev = cur
    else:
        raise QuadratureError(
            f"angular_bessel(N={N}) did not stabilize at {n} nodes"
        )
    if np.isscalar(rho) or np.asarray(rho).ndim == 0:
        return complex(out[0])
    return out
