"""Operators on isotypic functions f(g) = chi_N(g0) * K(log|g|).

Every operator here is diagonal in the angular mode N and acts on the
spectral profile psi by a scalar multiplier (or, for A, by the derivative
realized exactly as multiplication by v on the K-side):

    inversion I        K(v) -> K(-v),  psi(tau) -> psi(-tau)
    Gamma operator     psi -> gamma_N(tau) * psi     (unitary)
    Fourier transform  Gamma o I
    A                  K -> v*K
    H                  psi -> h_N * psi
    K-operator         psi -> k_N * psi
    B                  psi -> h_N*psi - to_spectral(v*K)   (= H - A)

An IsotypicFunction keeps the log-profile and the spectral profile in
sync; each operator performs at most the transforms it inherently needs.

Grid policy: functions are built by default on the wide log-window
v in [-64, 64].  Outputs of H, B, and the Gamma operator have e^{-|v|/2}
tails (the multiplier's analytic continuation has a pole half a unit off
the line), which are ~1e-3 at |v| = 16 but below 1e-13 at |v| = 64; the
narrow default window of spectral_line would fail the decay guard and,
worse, bias operator-identity checks at the 1e-2 level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .quat_core import Quaternion
from .specfun import gamma_multiplier, h_multiplier, k_multiplier
from .spectral_line import (
    DEFAULT_SPECTRAL_HALF_WIDTH,
    DEFAULT_SPECTRAL_SPACING,
    LogProfile,
    SpectralProfile,
    WIDE_LOG_HALF_WIDTH,
    apply_multiplier,
    evaluate_at_one,
    from_spectral,
    profile_value,
    to_spectral,
)
from .su2_angular import character

__all__ = [
    "IsotypicFunction",
    "AdditiveFunction",
    "gaussian_isotypic",
    "omega_isotypic",
    "value_at_identity",
    "inversion",
    "gamma_transform",
    "gamma_inverse",
    "fourier_transform",
    "op_A",
    "op_B",
    "op_H",
    "op_K",
    "to_additive",
]

SQRT_2PI2 = math.sqrt(2.0 * math.pi**2)

DEFAULT_V_SPACING = 1.0 / 64.0
DEFAULT_V_HALF_WIDTH = WIDE_LOG_HALF_WIDTH  # 64.0


@dataclass(frozen=True, eq=False)
class IsotypicFunction:
    """Angular mode N plus the radial profile in both pictures."""

    N: int
    log_profile: LogProfile
    spectral_profile: SpectralProfile

    @classmethod
    def from_log_profile(
        cls,
        N: int,
        profile: LogProfile,
        tau_spacing: float = DEFAULT_SPECTRAL_SPACING,
        tau_half_width: float = DEFAULT_SPECTRAL_HALF_WIDTH,
    ) -> "IsotypicFunction":
        return cls(N, profile, to_spectral(profile, tau_spacing, tau_half_width))

    @classmethod
    def from_log_function(
        cls,
        N: int,
        fn: Callable[[np.ndarray], np.ndarray],
        v_spacing: float = DEFAULT_V_SPACING,
        v_half_width: float = DEFAULT_V_HALF_WIDTH,
        tau_spacing: float = DEFAULT_SPECTRAL_SPACING,
        tau_half_width: float = DEFAULT_SPECTRAL_HALF_WIDTH,
    ) -> "IsotypicFunction":
        profile = LogProfile.from_function(fn, v_spacing, v_half_width)
        return cls.from_log_profile(N, profile, tau_spacing, tau_half_width)

    @classmethod
    def from_spectral_profile(
        cls,
        N: int,
        psi: SpectralProfile,
        v_spacing: float = DEFAULT_V_SPACING,
        v_half_width: float = DEFAULT_V_HALF_WIDTH,
    ) -> "IsotypicFunction":
        return cls(N, from_spectral(psi, v_spacing, v_half_width), psi)

    def _replace_spectral(self, samples: np.ndarray) -> "IsotypicFunction":
        psi = SpectralProfile(
            self.spectral_profile.spacing, self.spectral_profile.half_width, samples
        )
        k = from_spectral(
            psi, self.log_profile.spacing, self.log_profile.half_width
        )
        return IsotypicFunction(self.N, k, psi)


def gaussian_isotypic(
    N: int = 0, center: float = 0.0, width: float = 1.0
) -> IsotypicFunction:
    """The standard test function: K(v) = e^{-(v-center)^2/(2 width^2)}."""
    return IsotypicFunction.from_log_function(
        N, lambda v: np.exp(-0.5 * ((v - center) / width) ** 2)
    )


def omega_isotypic() -> IsotypicFunction:
    """The self-dual Gaussian e^{-2 pi n(x)} in multiplicative form:
    N = 0, K(v) = sqrt(2 pi^2) e^{v/2} e^{-2 pi e^{v/2}} (u = |x|, so the
    additive n(x) is u^{1/2} = e^{v/2})."""
    return IsotypicFunction.from_log_function(
        0, lambda v: SQRT_2PI2 * np.exp(0.5 * v) * np.exp(-2.0 * np.pi * np.exp(0.5 * v))
    )


def value_at_identity(f: IsotypicFunction) -> complex:
    """f(1) = chi_N(0) * K(0) = (N+1) * K(0)."""
    return (f.N + 1) * evaluate_at_one(f.spectral_profile)


# ------------------------------------------------------------------ operators


def inversion(f: IsotypicFunction) -> IsotypicFunction:
    """f(g) -> f(g^{-1}): reflection of both profiles (chi_N is invariant
    under g0 -> g0^{-1})."""
    k = LogProfile(
        f.log_profile.spacing, f.log_profile.half_width, f.log_profile.samples[::-1]
    )
    psi = SpectralProfile(
        f.spectral_profile.spacing,
        f.spectral_profile.half_width,
        f.spectral_profile.samples[::-1],
    )
    return IsotypicFunction(f.N, k, psi)


def gamma_transform(f: IsotypicFunction) -> IsotypicFunction:
    """psi -> gamma_N * psi (unitary: the multiplier is unimodular)."""
    rotated = apply_multiplier(f.spectral_profile, lambda t: gamma_multiplier(f.N, t))
    return f._replace_spectral(rotated.samples)


def gamma_inverse(f: IsotypicFunction) -> IsotypicFunction:
    """psi -> conj(gamma_N) * psi, the inverse of gamma_transform."""
    rotated = apply_multiplier(
        f.spectral_profile, lambda t: np.conjugate(gamma_multiplier(f.N, t))
    )
    return f._replace_spectral(rotated.samples)


def fourier_transform(f: IsotypicFunction) -> IsotypicFunction:
    """The additive Fourier transform in the multiplicative picture:
    the composite Gamma o I."""
    return gamma_transform(inversion(f))


def op_A(f: IsotypicFunction) -> IsotypicFunction:
    """A: multiplication of the log-profile by v (spectrally, -i d/dtau)."""
    k = LogProfile(
        f.log_profile.spacing,
        f.log_profile.half_width,
        f.log_profile.grid * f.log_profile.samples,
    )
    psi = to_spectral(
        k, f.spectral_profile.spacing, f.spectral_profile.half_width
    )
    return IsotypicFunction(f.N, k, psi)


def op_H(f: IsotypicFunction) -> IsotypicFunction:
    """The conductor operator: psi -> h_N * psi."""
    out = apply_multiplier(f.spectral_profile, lambda t: h_multiplier(f.N, t))
    return f._replace_spectral(out.samples)


def op_K(f: IsotypicFunction) -> IsotypicFunction:
    """The commutator operator i[B, A]: psi -> k_N * psi."""
    out = apply_multiplier(f.spectral_profile, lambda t: k_multiplier(f.N, t))
    return f._replace_spectral(out.samples)


def op_B(f: IsotypicFunction) -> IsotypicFunction:
    """B = H - A: psi -> h_N*psi - to_spectral(v*K).

    The A-part is computed on the K-side (exact), never by numerical
    differentiation of psi.
    """
    a_psi = to_spectral(
        LogProfile(
            f.log_profile.spacing,
            f.log_profile.half_width,
            f.log_profile.grid * f.log_profile.samples,
        ),
        f.spectral_profile.spacing,
        f.spectral_profile.half_width,
    )
    h_psi = h_multiplier(f.N, f.spectral_profile.grid) * f.spectral_profile.samples
    return f._replace_spectral(h_psi - a_psi.samples)


# ------------------------------------------------------------ additive picture


@dataclass(frozen=True, eq=False)
class AdditiveFunction:
    """phi(x) = f(x) / sqrt(2 pi^2 |x|), evaluated on nonzero quaternions."""

    source: IsotypicFunction

    def evaluate_points(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an (n, 4) array of quaternion coordinates."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        n = np.sum(pts * pts, axis=1)
        if np.any(n == 0.0):
            raise ValueError("additive evaluation at 0 is undefined")
        r = np.sqrt(n)
        theta = np.arccos(np.clip(pts[:, 0] / r, -1.0, 1.0))
        v = 2.0 * np.log(n)  # log|x| with |x| = n(x)^2
        k_vals = np.zeros(len(v), dtype=complex)
        inside = np.abs(v) <= self.source.log_profile.half_width
        if inside.any():
            k_vals[inside] = profile_value(self.source.spectral_profile, v[inside])
        # outside the window the profile is below the decay guard: treat as 0
        return character(self.source.N, theta) * k_vals / (SQRT_2PI2 * n)

    def __call__(self, x: Union[Quaternion, np.ndarray]) -> complex:
        coords = x.coords if isinstance(x, Quaternion) else np.asarray(x, dtype=float)
        return complex(self.evaluate_points(np.asarray(coords)[None, :])[0])


def to_additive(f: IsotypicFunction) -> AdditiveFunction:
    return AdditiveFunction(f)
