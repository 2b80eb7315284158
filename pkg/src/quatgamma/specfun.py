"""Complex special functions and the closed-form spectral objects.

The Gamma factor family on the critical strip 0 < Re(s) < 1 is

    gamma_factor(N, s) = i^N * (2*pi)^(2-4s) * G(2s + N/2) / G(2(1-s) + N/2)

with G Euler's Gamma function, always evaluated through log-gamma
differences (the two arguments grow like 4*|Im s|, so a quotient of Gamma
values would overflow long before the ratio stops being O(1)).

On the critical line s = 1/2 + i*tau the factor is the unimodular
multiplier gamma_multiplier(N, tau); its logarithmic derivative gives the
real multipliers

    h_multiplier(N, tau) = -4*log(2*pi) + 4*Re psi(1 + N/2 + 2i*tau)
    k_multiplier(N, tau) = 8*Im psi'(1 + N/2 + 2i*tau)

(h even, k odd; k = -dh/dtau).  All functions accept scalars or numpy
arrays in their continuous argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from ._errors import NonConvergenceError

__all__ = [
    "LOG_2PI",
    "log_gamma",
    "digamma",
    "trigamma",
    "gamma_factor",
    "gamma_multiplier",
    "gamma_log_derivative",
    "h_multiplier",
    "k_multiplier",
    "gamma0_expansion",
    "SpectralFunctionTable",
    "spectral_table",
]

LOG_2PI = math.log(2.0 * math.pi)

ArrayLike = Union[float, complex, np.ndarray]

# i^N for N mod 4
_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


def _check_right_half(z: np.ndarray, name: str) -> None:
    if np.any(z.real <= 0.0):
        raise ValueError(f"{name} requires Re(z) > 0")


def _maybe_scalar(value: np.ndarray, scalar: bool):
    return value[0] if scalar else value


# ---------------------------------------------------------------- log-gamma

# Lanczos coefficients, g = 7, 9 terms
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(z: ArrayLike) -> ArrayLike:
    """Principal branch of log Gamma for Re(z) > 0 (Lanczos, g = 7).

    Everything in scope keeps its Gamma arguments in the right half plane
    (they have the form 2s + N/2 or 1 + N/2 + 2i*tau), so no reflection
    formula is provided; Re(z) <= 0 raises.
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    w = np.atleast_1d(arr).astype(complex)
    _check_right_half(w, "log_gamma")
    # shift to Re >= 8 first: there the rational factor stays close to 1 and
    # its principal log cannot wrap, so the result is the analytic branch
    w = w.copy()
    shift = np.zeros_like(w)
    while True:
        mask = w.real < 8.0
        if not mask.any():
            break
        shift[mask] += np.log(w[mask])
        w[mask] += 1.0
    acc = np.full_like(w, _LANCZOS_C[0])
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (w - 1.0 + k)
    t = w + (_LANCZOS_G - 0.5)
    out = 0.5 * LOG_2PI + (w - 0.5) * np.log(t) - t + np.log(acc) - shift
    return _maybe_scalar(out, scalar)


# ---------------------------------------------------- digamma and trigamma

# B_{2n}/(2n) for the digamma asymptotic, n = 1..7
_DIGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)
# B_{2n} for the trigamma asymptotic, n = 1..7
_TRIGAMMA_TAIL = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)
_ASYMPTOTIC_RE = 16.0  # first dropped term is ~1e-20 at |z| = 16


def digamma(z: ArrayLike) -> ArrayLike:
    """psi(z) for Re(z) > 0: recurrence shift to Re >= 16, then the
    Bernoulli asymptotic series."""
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    w = np.atleast_1d(arr).copy()
    _check_right_half(w, "digamma")
    acc = np.zeros_like(w)
    while True:
        mask = w.real < _ASYMPTOTIC_RE
        if not mask.any():
            break
        acc[mask] -= 1.0 / w[mask]
        w[mask] += 1.0
    x = 1.0 / (w * w)
    tail = np.zeros_like(w)
    for c in reversed(_DIGAMMA_TAIL):
        tail = x * (c + tail)
    out = acc + np.log(w) - 0.5 / w - tail
    return _maybe_scalar(out, scalar)


def trigamma(z: ArrayLike) -> ArrayLike:
    """psi'(z) for Re(z) > 0, same shift-plus-asymptotics scheme."""
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    w = np.atleast_1d(arr).copy()
    _check_right_half(w, "trigamma")
    acc = np.zeros_like(w)
    while True:
        mask = w.real < _ASYMPTOTIC_RE
        if not mask.any():
            break
        acc[mask] += 1.0 / w[mask] ** 2
        w[mask] += 1.0
    x = 1.0 / (w * w)
    tail = np.zeros_like(w)
    for c in reversed(_TRIGAMMA_TAIL):
        tail = x * (c + tail)
    out = acc + 1.0 / w + 0.5 * x + tail / w
    return _maybe_scalar(out, scalar)


# ------------------------------------------------------------- Gamma factors


def _check_strip(s: np.ndarray) -> None:
    if np.any((s.real <= 0.0) | (s.real >= 1.0)):
        raise ValueError("s must lie in the open strip 0 < Re(s) < 1")


def gamma_factor(N: int, s: ArrayLike) -> ArrayLike:
    """Gamma factor of angular mode N at strip point s (see module docstring)."""
    if N < 0:
        raise ValueError("angular mode N must be >= 0")
    arr = np.asarray(s, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    _check_strip(arr)
    half_n = 0.5 * N
    exponent = (
        (2.0 - 4.0 * arr) * LOG_2PI
        + log_gamma(2.0 * arr + half_n)
        - log_gamma(2.0 * (1.0 - arr) + half_n)
    )
    out = _I_POW[N % 4] * np.exp(exponent)
    return _maybe_scalar(out, scalar)


def gamma_multiplier(N: int, tau: ArrayLike) -> ArrayLike:
    """The unimodular multiplier gamma_N(tau) = gamma_factor(N, 1/2 + i*tau).

    On the line the Gamma-ratio is Gamma(a + 2i*tau)/Gamma(a - 2i*tau) with
    a = 1 + N/2 real, a pure phase 2*Im log Gamma(a + 2i*tau); the whole
    factor is exp of a purely imaginary number times i^N, so |result| = 1
    holds to rounding by construction.
    """
    if N < 0:
        raise ValueError("angular mode N must be >= 0")
    arr = np.asarray(tau, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    phase = 2.0 * np.imag(log_gamma(1.0 + 0.5 * N + 2.0j * arr)) - 4.0 * arr * LOG_2PI
    out = _I_POW[N % 4] * np.exp(1j * phase)
    return _maybe_scalar(out, scalar)


def gamma_log_derivative(N: int, s: ArrayLike) -> ArrayLike:
    """d/ds log gamma_factor(N, s) =
    -4*log(2*pi) + 2*psi(2s + N/2) + 2*psi(2(1-s) + N/2).

    Symmetric under s -> 1-s; real on the critical line.
    """
    if N < 0:
        raise ValueError("angular mode N must be >= 0")
    arr = np.asarray(s, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    _check_strip(arr)
    half_n = 0.5 * N
    out = (
        -4.0 * LOG_2PI
        + 2.0 * digamma(2.0 * arr + half_n)
        + 2.0 * digamma(2.0 * (1.0 - arr) + half_n)
    )
    return _maybe_scalar(out, scalar)


def h_multiplier(N: int, tau: ArrayLike) -> ArrayLike:
    """gamma_log_derivative on the critical line, in its real form."""
    if N < 0:
        raise ValueError("angular mode N must be >= 0")
    arr = np.asarray(tau, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    val = -4.0 * LOG_2PI + 4.0 * np.real(digamma(1.0 + 0.5 * N + 2.0j * arr))
    return _maybe_scalar(val, scalar)


def k_multiplier(N: int, tau: ArrayLike) -> ArrayLike:
    """Negative tau-derivative of h_multiplier: 8*Im psi'(1 + N/2 + 2i*tau)."""
    if N < 0:
        raise ValueError("angular mode N must be >= 0")
    arr = np.asarray(tau, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    val = 8.0 * np.imag(trigamma(1.0 + 0.5 * N + 2.0j * arr))
    return _maybe_scalar(val, scalar)


# ------------------------------------------------------------- series constant


def _neville_to_zero(xs: np.ndarray, ys: np.ndarray) -> List[float]:
    """Successive polynomial extrapolants of (xs, ys) to x = 0 (top row of
    the Neville tableau)."""
    p = list(ys)
    n = len(p)
    diag = [p[0]]
    for m in range(1, n):
        for j in range(n - m):
            p[j] = (xs[j + m] * p[j] - xs[j] * p[j + 1]) / (xs[j + m] - xs[j])
        diag.append(p[0])
    return diag


def gamma0_expansion(
    order: int, levels: int = 6, start: float = 1e-2, tol: float = 1e-7
) -> List[float]:
    """Series coefficients of 2*pi^2 * gamma_factor(0, 1 - eps) in eps.

    The function behaves like c1*eps + c2*eps^2 + c3*eps^3 + ... near
    eps = 0; the list [c1, ..., c_order] is returned for order in {2, 3}.
    Coefficients are extracted by Richardson extrapolation of
    g(eps) = value/eps sampled at eps = start/2^j: c1 extrapolates g
    itself, c2 the first divided differences, c3 the second.  Each divided
    difference divides the c1-level rounding noise by eps, so the
    convergence guard is loosened by 1/eps_min per coefficient order.

    Raises NonConvergenceError when the last two extrapolants of a
    coefficient differ by more than its guard.
    """
    if order not in (2, 3):
        raise ValueError("order must be 2 or 3")
    if levels < 4:
        raise ValueError("need at least 4 extrapolation levels")
    eps = start / 2.0 ** np.arange(levels)
    vals = np.array(
        [2.0 * np.pi**2 * gamma_factor(0, 1.0 - e).real / e for e in eps]
    )

    noise_step = 1.0 / eps[-1]  # noise growth per divided-difference level
    coeffs: List[float] = []
    ys = vals
    for k in range(order):
        m = len(ys)
        diag = _neville_to_zero(eps[:m], ys)
        guard = tol * noise_step**k
        if abs(diag[-1] - diag[-2]) > guard:
            raise NonConvergenceError(
                f"coefficient {k + 1} extrapolation unstable: "
                f"last step {abs(diag[-1] - diag[-2]):.3e} > {guard:.3e}"
            )
        coeffs.append(float(diag[-1]))
        # next divided-difference level: gap between node j and node j+k+1
        ys = np.array(
            [(ys[j] - ys[j + 1]) / (eps[j] - eps[j + k + 1]) for j in range(m - 1)]
        )
    return coeffs


# ------------------------------------------------------------------ table type


@dataclass(frozen=True)
class SpectralFunctionTable:
    """gamma_N, h_N, k_N sampled on a uniform symmetric tau-grid."""

    N: int
    tau: np.ndarray
    gamma: np.ndarray
    h: np.ndarray
    k: np.ndarray


def spectral_table(
    N: int, spacing: float = 0.01, half_width: float = 50.0
) -> SpectralFunctionTable:
    m = int(round(half_width / spacing))
    tau = spacing * np.arange(-m, m + 1)
    return SpectralFunctionTable(
        N=N,
        tau=tau,
        gamma=gamma_multiplier(N, tau),
        h=h_multiplier(N, tau),
        k=k_multiplier(N, tau),
    )
