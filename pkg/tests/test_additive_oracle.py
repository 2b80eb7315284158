"""Tests for the additive-picture oracles.

Closed-form anchors used here:
  - e^{-2 pi n(x)} is its own transform under the self-dual measure, with
    total mass 1, and scaling sends e^{-2 pi t n} to t^{-2} e^{-2 pi n/t}.
  - G(n e^{-2 pi n}) = 1/pi: the integrand vanishes at 0, so G reduces to
    the plain weighted integral int 4 r e^{-2 pi r^2} dr = 1/pi.
  - G(e^{-2 pi n}) = 2 log(2 pi) + 2 gamma_e - 2 = G_CONSTANT/2 - 1, from
    int_0^inf r^3 log(r) e^{-a r^2} dr = ((1 - gamma_e) - log a)/(4 a^2)
    at a = 2 pi, applied to -int log|x| e^{-2 pi n} dx/(2 pi^2 |x|^0)
    split at r = 1.
  - Delta_s(e^{-2 pi n}) equals the Gaussian moment at N = 0.
"""

import math

import numpy as np
import pytest

from quatgamma.additive_oracle import (
    G_CONSTANT,
    Grid4D,
    GridFunction,
    HomogeneousDistribution,
    brute_fourier,
    delta_s,
    distribution_G,
    functional_equation_residual,
    gaussian_grid_function,
    gaussian_moment,
    gaussian_moment_quadrature,
    homogeneity_check,
    isotypic_grid_function,
    omega_grid_function,
    op_b_via_distribution,
    radial_fourier,
)
from quatgamma.gamma_op import (
    IsotypicFunction,
    gamma_transform,
    gaussian_isotypic,
    inversion,
    op_B,
    to_additive,
    value_at_identity,
)
from quatgamma.quat_core import Quaternion
from quatgamma.specfun import gamma_factor
from quatgamma.su2_angular import character


def omega_exact(pts):
    return np.exp(-2.0 * np.pi * np.sum(np.atleast_2d(pts) ** 2, axis=1))


def seeded_probes(k, lo, hi, seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(k, 4))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    pts *= (lo + (hi - lo) * rng.random(k))[:, None]
    return [Quaternion(*p) for p in pts]


@pytest.fixture(scope="module")
def box():
    return Grid4D(2.0, 33)


@pytest.fixture(scope="module")
def omega_sampled(box):
    return omega_grid_function(box)


# ------------------------------------------------------------------- grids


def test_grid_spacing_exact():
    g = Grid4D(2.0, 33)
    assert g.spacing * (g.points_per_axis - 1) / 2.0 == g.half_extent
    ax = g.axis()
    assert ax[0] == -2.0 and ax[-1] == 2.0 and ax[16] == 0.0


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid4D(2.0, 32)
    with pytest.raises(ValueError):
        Grid4D(2.0, 1)
    with pytest.raises(ValueError):
        Grid4D(0.0, 33)


def test_grid_function_enforces_decay(box):
    m = box.points_per_axis
    rng = np.random.default_rng(7)
    with pytest.raises(ValueError):
        GridFunction(box, rng.normal(size=(m, m, m, m)).astype(complex))
    with pytest.raises(ValueError):
        GridFunction(box, np.zeros((m, m, m)))


def test_omega_grid_values(box, omega_sampled):
    m = box.points_per_axis
    assert omega_sampled.values[m // 2, m // 2, m // 2, m // 2] == 1.0
    ax = box.axis()
    want = math.exp(-2.0 * math.pi * (ax[3] ** 2 + ax[20] ** 2 + ax[8] ** 2 + ax[30] ** 2))
    assert abs(omega_sampled.values[3, 20, 8, 30] - want) < 1e-15


# ---------------------------------------------------------- brute transform


def test_brute_omega_self_dual(omega_sampled):
    probes = seeded_probes(10, 0.2, 1.0, seed=101)
    got = brute_fourier(omega_sampled, probes)
    want = omega_exact(np.array([p.coords for p in probes]))
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-3


def test_brute_omega_total_mass(omega_sampled):
    got = brute_fourier(omega_sampled, [Quaternion(0.0)])[0]
    assert abs(got - 1.0) < 1e-4


def test_brute_zero_function(box):
    m = box.points_per_axis
    zero = GridFunction(box, np.zeros((m, m, m, m), dtype=complex))
    got = brute_fourier(zero, seeded_probes(4, 0.2, 1.0, seed=5))
    assert np.all(got == 0.0)


def test_brute_scaling_oracle(box):
    t = 1.3
    probes = seeded_probes(5, 0.2, 1.0, seed=23)
    got = brute_fourier(gaussian_grid_function(box, t), probes)
    n = np.sum(np.array([p.coords for p in probes]) ** 2, axis=1)
    want = np.exp(-2.0 * np.pi * n / t) / t**2
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-12


def test_brute_linearity_and_conjugate_symmetry(box):
    rng = np.random.default_rng(31)
    m = box.points_per_axis
    # random samples damped by the Gaussian envelope so the decay
    # surrogate holds
    env = omega_grid_function(box).values.real
    a = GridFunction(box, (rng.normal(size=(m,) * 4) + 1j * rng.normal(size=(m,) * 4)) * env)
    b = GridFunction(box, (rng.normal(size=(m,) * 4) + 1j * rng.normal(size=(m,) * 4)) * env)
    combo = GridFunction(box, 0.7 * a.values + (2.0 - 0.5j) * b.values)
    probes = seeded_probes(4, 0.3, 1.0, seed=37)

    fa, fb, fc = (brute_fourier(g, probes) for g in (a, b, combo))
    assert np.max(np.abs(fc - 0.7 * fa - (2.0 - 0.5j) * fb)) < 1e-12

    mirrored = [Quaternion(*(-np.asarray(p.coords))) for p in probes]
    f_conj = brute_fourier(GridFunction(box, np.conj(a.values)), probes)
    assert np.max(np.abs(f_conj - np.conj(brute_fourier(a, mirrored)))) < 1e-12


# --------------------------------------------------------- radial transform


def test_radial_gaussian_self_dual():
    probes = seeded_probes(8, 0.0, 1.0, seed=61) + [Quaternion(0.0)]
    got = radial_fourier(0, lambda r: np.exp(-2.0 * np.pi * r**2), probes)
    want = omega_exact(np.array([p.coords for p in probes]))
    assert np.max(np.abs(got - want)) < 1e-6


def test_radial_zero_function():
    got = radial_fourier(1, lambda r: np.zeros_like(r), seeded_probes(3, 0.2, 0.8, seed=2))
    assert np.max(np.abs(got)) == 0.0


@pytest.mark.parametrize("N", [1, 2])
def test_radial_matches_brute(box, N):
    def q(r):
        return r**N * np.exp(-2.0 * np.pi * r**2)

    def phi(pts):
        pts = np.atleast_2d(pts)
        r = np.linalg.norm(pts, axis=1)
        out = np.zeros(len(r), dtype=complex)
        nz = r > 0
        theta = np.arccos(np.clip(pts[nz, 0] / r[nz], -1.0, 1.0))
        out[nz] = character(N, theta) * q(r[nz])
        return out

    probes = seeded_probes(5, 0.3, 0.9, seed=400 + N)
    got = brute_fourier(GridFunction.from_function(box, phi), probes)
    want = radial_fourier(N, q, probes)
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-2


# ------------------------------------------------------- the distribution G


def test_g_of_vanishing_function():
    phi = lambda pts: np.sum(np.atleast_2d(pts) ** 2, axis=1) * omega_exact(pts)
    assert abs(distribution_G(phi) - 1.0 / math.pi) < 1e-12


def test_g_of_gaussian_closed_form():
    want = 2.0 * math.log(2.0 * math.pi) + 2.0 * np.euler_gamma - 2.0
    assert want == pytest.approx(G_CONSTANT / 2.0 - 1.0, abs=1e-15)
    assert abs(distribution_G(omega_exact) - want) < 1e-12


def test_g_two_resolutions_agree():
    lo = distribution_G(omega_exact)
    hi = distribution_G(omega_exact, nodes_per_panel=24, angular_nodes=96)
    assert abs(lo - hi) < 1e-8


# -------------------------------------------------- homogeneous distributions


@pytest.mark.parametrize("s", [0.5 + 0.0j, 0.3 + 0.6j, 0.9 + 0.0j])
def test_delta_s_of_gaussian_is_moment(s):
    got = delta_s(s, omega_exact)
    want = gaussian_moment(0, s)
    assert abs(got - want) / abs(want) < 1e-12


@pytest.mark.parametrize("s", [0.5 + 0.0j, 0.25 + 1.0j, 0.8 - 0.5j])
def test_delta_s_regularized_matches_direct(s):
    """For Re(s) > 0 the subtracted and pole terms cancel exactly, so the
    regularized value must agree with the unregularized integral."""
    from quatgamma.additive_oracle import _class_average, _gauss_panels

    edges = np.linspace(-96.0, 4.0 * math.log(64.0), 81)
    u, w = _gauss_panels(edges, 16)
    avg = _class_average(omega_exact, np.exp(u / 4.0), 64)
    direct = 2.0 * np.pi**2 * np.sum(w * np.exp(s * u) * avg)
    assert abs(delta_s(s, omega_exact) - direct) / abs(direct) < 1e-8


def test_delta_s_domain_validation():
    for bad in (0.0, -0.3, -0.25 + 1.0j):
        with pytest.raises(ValueError):
            delta_s(bad, omega_exact)
        with pytest.raises(ValueError):
            HomogeneousDistribution(bad)
    d = HomogeneousDistribution(0.4 + 0.2j)
    assert d(omega_exact) == delta_s(0.4 + 0.2j, omega_exact)


def test_delta_s_analytic_in_s():
    """Central difference along the real direction matches the Cauchy
    circle derivative, so the map s -> Delta_s(phi) is genuinely analytic,
    not just separately smooth."""
    s0 = 0.6 + 0.3j
    radius = 0.05
    theta = 2.0 * np.pi * np.arange(16) / 16
    ring = np.array([delta_s(s0 + radius * np.exp(1j * t), omega_exact) for t in theta])
    cauchy = np.mean(ring * np.exp(-1j * theta)) / radius
    step = 1e-4
    fd = (delta_s(s0 + step, omega_exact) - delta_s(s0 - step, omega_exact)) / (2 * step)
    assert abs(fd - cauchy) < 1e-6 * max(1.0, abs(cauchy))


@pytest.mark.parametrize("s", [0.5 + 0.5j, 0.35 + 0.0j])
@pytest.mark.parametrize("t", [0.8, 1.4])
def test_delta_s_weak_functional_equation(s, t):
    """<F Delta_s, phi> = Gamma_0(s) <Delta_{1-s}, phi> on scaled
    Gaussians, whose transforms are known in closed form."""
    phi = lambda pts: np.exp(-2.0 * np.pi * t * np.sum(np.atleast_2d(pts) ** 2, axis=1))
    phi_hat = lambda pts: np.exp(-2.0 * np.pi * np.sum(np.atleast_2d(pts) ** 2, axis=1) / t) / t**2
    lhs = delta_s(s, phi_hat)
    rhs = gamma_factor(0, s) * delta_s(1.0 - s, phi)
    assert abs(lhs - rhs) / abs(rhs) < 1e-6


# -------------------------------------------------------- Gaussian moments


def test_moment_at_half_is_two_pi():
    assert abs(gaussian_moment(0, 0.5) - 2.0 * math.pi) < 1e-12


@pytest.mark.parametrize("N", [0, 3, 6])
def test_moment_closed_vs_quadrature(N):
    for s in (0.05 + 0.0j, 0.5 + 2.0j, 1.0 / 21.0 - 2.0j, 0.95 + 1.3j):
        closed = gaussian_moment(N, s)
        quad = gaussian_moment_quadrature(N, s)
        assert abs(closed - quad) / abs(closed) < 1e-9


@pytest.mark.parametrize("N", [0, 2, 5])
def test_functional_equation_residual(N):
    for s in (0.5 + 0.0j, 0.3 + 1.7j, 0.9 - 2.0j, 0.05 + 0.4j):
        assert functional_equation_residual(N, s) < 1e-10


def test_moment_strip_validation():
    for bad in (0.0, 1.0, -0.2, 1.3 + 1.0j):
        with pytest.raises(ValueError):
            gaussian_moment(0, bad)


# ------------------------------------------------------------- dual routes


@pytest.mark.parametrize("N", [0, 1])
def test_homogeneity_identity(N):
    f = gaussian_isotypic(N=N)
    for tau in (0.0, 0.5, 1.0, 2.0):
        assert homogeneity_check(N, 0.5 + 1j * tau, f) < 1e-8


def test_homogeneity_validation():
    f = gaussian_isotypic(N=1)
    with pytest.raises(ValueError):
        homogeneity_check(0, 0.5, f)
    with pytest.raises(ValueError):
        homogeneity_check(1, 1.5, f)


@pytest.mark.parametrize("N", [0, 1])
def test_b_dual_route_at_identity(N):
    f = gaussian_isotypic(N=N)
    spectral = value_at_identity(op_B(f))
    convolution = op_b_via_distribution(f)
    assert abs(spectral - convolution) / abs(spectral) < 1e-10


# ------------------------------------------------------ isotypic sampling


def test_isotypic_grid_sampling_matches_exact(box):
    # narrow log-profile: wide ones decay too slowly for the box surrogate
    f = IsotypicFunction.from_log_function(1, lambda v: np.exp(-v**2 / (2.0 * 0.45**2)))
    sampled = isotypic_grid_function(box, f)
    rng = np.random.default_rng(77)
    pts = rng.normal(size=(40, 4)) * 0.6
    exact = to_additive(f).evaluate_points(pts)

    from scipy.interpolate import CubicSpline

    spline = CubicSpline(f.log_profile.grid, f.log_profile.samples)
    n = np.sum(pts**2, axis=1)
    theta = np.arccos(np.clip(pts[:, 0] / np.sqrt(n), -1.0, 1.0))
    via_spline = character(1, theta) * spline(2.0 * np.log(n)) / (math.sqrt(2.0 * math.pi**2) * n)
    assert np.max(np.abs(via_spline - exact)) < 1e-7

    m = box.points_per_axis
    assert sampled.values[m // 2, m // 2, m // 2, m // 2] == 0.0


def test_multiplier_route_matches_brute_transform(box):
    """Transform of the inverted function through the operator multiplier
    versus the brute-force grid sum, at interior probes."""
    N = 1
    f = IsotypicFunction.from_log_function(N, lambda v: np.exp(-v**2 / (2.0 * 0.45**2)))
    sampled = isotypic_grid_function(box, inversion(f))
    probes = seeded_probes(5, 0.4, 0.9, seed=900)
    got = brute_fourier(sampled, probes)
    want = to_additive(gamma_transform(f)).evaluate_points(
        np.array([p.coords for p in probes], dtype=float)
    )
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-2
