"""Truncated trace of the scaling action twisted by the Gamma operator,
evaluated by two independent routes.

For an isotypic f with value f(1) at the identity, the trace over the
module ball |Y| <= Lambda^2 expands as

    Tr(Lambda) = 2 log(Lambda) f(1) - H(f)(1) + R(Lambda),

with H the log-weight operator and R(Lambda) -> 0 superpolynomially for
profiles with fast spectral decay.

Direct route: the trace is the weighted additive integral

    sqrt(2 pi^2) int_{|Y| <= Lambda^2} (2 log Lambda - log|Y|) lambda(Y)
                 (Gamma f)_a(Y) dY,

which the radial-angular reduction collapses to a one-dimensional
oscillatory integral against the class-measure Bessel factor (see
trace_direct).  Spectral route: the cutoff operator is conjugated through
Gamma,

    (2 log Lambda - B)_+ = Gamma (2 log Lambda + A)_+ Gamma^{-1},

so the weight becomes plain multiplication by max(2 log Lambda + v, 0) on
the log side (see trace_spectral).  The kink of that weight at
v = -2 log Lambda would poison a uniform-grid transform, so the transform
is split there and the sub-kink piece handled by oscillatory panel
quadrature that stays accurate across the whole spectral window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import eval_legendre, spherical_jn

from ._errors import QuadratureError
from .gamma_op import (
    IsotypicFunction,
    gamma_inverse,
    gamma_transform,
    inversion,
    op_H,
    value_at_identity,
)
from .specfun import gamma_multiplier
from .spectral_line import LogProfile, profile_value, to_spectral
from .su2_angular import angular_bessel

__all__ = [
    "TraceConfig",
    "TraceResult",
    "trace_direct",
    "trace_spectral",
    "residual_sweep",
    "fit_trace_expansion",
]

DEFAULT_LAMBDAS = (2.0, 4.0, 8.0, 16.0, 32.0, 64.0)


@dataclass(frozen=True)
class TraceConfig:
    """Sweep configuration: the profile, the cutoff list (strictly
    increasing, all above 1), quadrature resolutions, and the refinement
    tolerance.  radial_nodes and angular_tol parameterize the direct
    route (Gauss nodes per radial panel, Bessel reduction tolerance);
    the spectral route needs neither."""

    f: IsotypicFunction
    lambdas: Tuple[float, ...] = DEFAULT_LAMBDAS
    radial_nodes: int = 16
    angular_tol: float = 1e-10
    tolerance: float = 1e-8
    fit_min_lambda: float = 8.0

    def __post_init__(self) -> None:
        lams = tuple(float(l) for l in self.lambdas)
        if len(lams) == 0:
            raise ValueError("lambdas must be non-empty")
        if any(l <= 1.0 for l in lams):
            raise ValueError("every cutoff must exceed 1")
        if any(b <= a for a, b in zip(lams, lams[1:])):
            raise ValueError("lambdas must be strictly increasing")
        if self.radial_nodes < 2:
            raise ValueError("radial_nodes must be at least 2")
        object.__setattr__(self, "lambdas", lams)


@dataclass(frozen=True)
class TraceResult:
    """One cutoff's trace and its expansion bookkeeping: leading term
    2 log(Lambda) f(1), the constant -H(f)(1), and what is left over."""

    lam: float
    trace: complex
    leading: complex
    h_term: complex
    residual: complex


# ------------------------------------------------------------ direct route


def _direct_panel_edges(v_min: float, v_top: float) -> np.ndarray:
    """Panel edges in v = log|Y|, width shrinking like 2/r near the top so
    the Bessel oscillation (phase slope pi * r per unit v) stays within a
    16-node panel's resolving power."""
    edges = [v_min]
    while edges[-1] < v_top:
        width = min(1.0, 2.0 / math.exp(edges[-1] / 4.0))
        edges.append(min(edges[-1] + width, v_top))
    return np.array(edges)


def _direct_quadrature(
    f: IsotypicFunction,
    lam: float,
    nodes_per_panel: int,
    v_min: float,
    angular_tol: float,
) -> complex:
    two_log = 2.0 * math.log(lam)
    gamma_f = gamma_transform(f)
    edges = _direct_panel_edges(v_min, two_log)
    x, w = leggauss(nodes_per_panel)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    v = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    kernel = profile_value(gamma_f.spectral_profile, v)
    bess = angular_bessel(f.N, np.exp(v / 4.0), tol=angular_tol)
    integrand = (two_log - v) * kernel * bess * np.exp(v / 2.0)
    return complex(2.0 * np.pi**2 * np.sum(wt * integrand))


def trace_direct(
    f: IsotypicFunction,
    lam: float,
    tol: float = 1e-8,
    v_min: float = -40.0,
    nodes_per_panel: int = 16,
    angular_tol: float = 1e-10,
) -> complex:
    """Trace by the additive integral, radially reduced to

        2 pi^2 int_{v_min}^{2 log Lambda} (2 log Lambda - v) K_Gamma(v)
               angular_bessel(N, e^{v/4}) e^{v/2} dv

    where K_Gamma is the log-profile of Gamma(f).  Two refinements (node
    count raised by half) must agree within tol, else the quadrature
    reports failure.
    """
    if lam <= 1.0:
        raise ValueError("cutoff must exceed 1")
    coarse = _direct_quadrature(f, lam, nodes_per_panel, v_min, angular_tol)
    fine = _direct_quadrature(
        f, lam, nodes_per_panel + nodes_per_panel // 2, v_min, angular_tol
    )
    if abs(coarse - fine) > tol * max(1.0, abs(fine)):
        raise QuadratureError(
            f"direct trace refinements disagree by {abs(coarse - fine):.3e} at "
            f"cutoff {lam}"
        )
    return fine


# ---------------------------------------------------------- spectral route


def _filon_fourier(
    g: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    taus: np.ndarray,
    panel_width: float = 1.0,
    degree: int = 16,
) -> np.ndarray:
    """int_lo^hi g(v) e^{i tau v} dv for every tau at once.

    Per panel the smooth factor g is projected onto Legendre polynomials
    and the oscillatory moments int P_m(x) e^{i alpha x} dx = 2 i^m
    j_m(alpha) are exact, so accuracy is uniform in tau instead of
    collapsing once the phase outruns a fixed Gauss rule.
    """
    n_panels = max(1, int(math.ceil((hi - lo) / panel_width)))
    edges = np.linspace(lo, hi, n_panels + 1)
    half = 0.5 * (edges[1] - edges[0])
    mids = 0.5 * (edges[1:] + edges[:-1])

    n_proj = degree + 4
    x, w = leggauss(n_proj)
    orders = np.arange(degree + 1)
    legendre = eval_legendre(orders[:, None], x[None, :])
    projector = legendre * w[None, :] * ((2.0 * orders + 1.0) / 2.0)[:, None]

    nodes = (mids[:, None] + half * x[None, :]).ravel()
    g_nodes = np.asarray(g(nodes), dtype=complex).reshape(n_panels, n_proj)
    coeffs = g_nodes @ projector.T  # (panels, degree+1)

    alpha = taus * half
    sign = np.where(alpha < 0.0, -1.0, 1.0)
    j = np.stack([spherical_jn(m, np.abs(alpha)) for m in orders])
    j *= sign[None, :] ** orders[:, None]  # j_m(-a) = (-1)^m j_m(a)

    phases = np.exp(1j * np.outer(taus, mids))  # (taus, panels)
    moments = 2.0 * (1j**orders)[:, None] * j  # (degree+1, taus)
    return half * np.einsum("tp,pm,mt->t", phases, coeffs, moments)


def trace_spectral(f: IsotypicFunction, lam: float, tol: float = 1e-8) -> complex:
    """Trace through Gamma max(2 log Lambda + A, 0) Gamma^{-1} applied to
    the inverted profile and read off at the identity.

    The weight is exact on the log side.  Its kink at v0 = -2 log Lambda
    is split off: the full-line linear weight transforms on the uniform
    grid (spectrally accurate, the integrand is smooth), and the
    correction over [-V, v0], where the true weight vanishes, goes through
    the oscillatory panel transform.  Two panel densities must agree.
    """
    if lam <= 1.0:
        raise ValueError("cutoff must exceed 1")
    two_log = 2.0 * math.log(lam)
    v0 = -two_log

    f1 = gamma_inverse(inversion(f))
    prof = f1.log_profile
    psi = f1.spectral_profile
    full = LogProfile(
        prof.spacing, prof.half_width, (two_log + prof.grid) * prof.samples
    )
    psi_full = to_spectral(full, psi.spacing, psi.half_width)

    def sub_kink(v: np.ndarray) -> np.ndarray:
        return (two_log + v) * profile_value(psi, v)

    taus = psi.grid
    psi_c = _filon_fourier(sub_kink, -prof.half_width, v0, taus, panel_width=1.0)
    psi_c_fine = _filon_fourier(
        sub_kink, -prof.half_width, v0, taus, panel_width=0.5
    )

    gamma_vals = gamma_multiplier(f.N, taus)
    weight = (f.N + 1) * psi.spacing / (2.0 * np.pi)

    trace = weight * np.sum(gamma_vals * (psi_full.samples - psi_c_fine))
    check = weight * np.sum(gamma_vals * (psi_full.samples - psi_c))
    if abs(trace - check) > tol * max(1.0, abs(trace)):
        raise QuadratureError(
            f"spectral trace refinements disagree by {abs(trace - check):.3e} "
            f"at cutoff {lam}"
        )
    return complex(trace)


# ------------------------------------------------------------------ sweeps


def residual_sweep(config: TraceConfig) -> List[TraceResult]:
    """Spectral-route traces over the cutoff list, with the expansion
    bookkeeping attached.  The spectral route is used because its cost and
    accuracy are uniform in Lambda; trace_direct remains the independent
    cross-check."""
    f = config.f
    f_at_1 = value_at_identity(f)
    h_at_1 = value_at_identity(op_H(f))
    results = []
    for lam in config.lambdas:
        tr = trace_spectral(f, lam, tol=config.tolerance)
        leading = 2.0 * math.log(lam) * f_at_1
        results.append(
            TraceResult(
                lam=lam,
                trace=tr,
                leading=leading,
                h_term=h_at_1,
                residual=tr - leading + h_at_1,
            )
        )
    return results


def fit_trace_expansion(
    results: Sequence[TraceResult], min_lambda: float = 8.0
) -> Tuple[float, float]:
    """Least-squares line trace ~ slope * 2 log(Lambda) + intercept over
    the cutoffs at or above min_lambda.  For a well-resolved profile the
    slope recovers f(1) and the intercept recovers -H(f)(1)."""
    kept = [r for r in results if r.lam >= min_lambda]
    if len(kept) < 2:
        raise ValueError("need at least two cutoffs at or above min_lambda")
    x = np.array([2.0 * math.log(r.lam) for r in kept])
    y = np.array([r.trace.real for r in kept])
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)
