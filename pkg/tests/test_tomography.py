import math

import numpy as np
import pytest

from partomo import (
    FrameError,
    Gaussian1D,
    NearSingularFrameError,
    PhaseSpaceGrid,
    PiecewiseConstantProfile,
    QuadratureGrid,
    ReferenceFrame,
    SinusoidalProfile,
    TruncationError,
    bayes_recover,
    coherent_wavefunction,
    gaussian_frame_weight,
    integrate_trajectory,
    inverse_radon,
    joint_probability,
    optical_to_symplectic,
    optical_tomogram,
    phase_space_moments,
    radon_transform,
    symplectic_tomogram,
    tomogram_density,
    tomogram_via_fractional_fourier,
    wigner_from_density,
    wigner_gaussian,
)
from partomo.states import PhaseSpaceMoments
from partomo.tomography import FRFT_MIN_NU
from partomo.trajectory import TrajectoryPoint

REST = TrajectoryPoint(0.0, 1.0 + 0.0j, 1.0j, 0.0)

VACUUM = PhaseSpaceMoments(t=0.0, q_mean=0.0, p_mean=0.0,
                           s_qq=0.5, s_pp=0.5, s_qp=0.0)


def squeezed_case():
    """Correlated moments partway through a step-profile ringdown."""
    prof = PiecewiseConstantProfile((0.0,), (2.0,), allow_nonunit_omega0=True)
    traj = integrate_trajectory(prof, 0.5, 1e-3)
    return phase_space_moments(1.0 + 0.0j, traj.point_at(0.25))


def driven_point(t=1.7):
    prof = SinusoidalProfile(1.0, 0.5, 2.0, allow_nonunit_omega0=True)
    return integrate_trajectory(prof, 2.0, 1e-3).point_at(t)


def test_frame_rejects_origin_and_nonfinite():
    with pytest.raises(FrameError):
        ReferenceFrame(0.0, 0.0)
    with pytest.raises(FrameError):
        ReferenceFrame(math.inf, 1.0)
    frame = ReferenceFrame(0.6, -0.8)
    assert frame.scale == pytest.approx(1.0)


def test_optical_frame():
    frame = ReferenceFrame.optical(0.3)
    assert frame.mu == pytest.approx(math.cos(0.3))
    assert frame.nu == pytest.approx(math.sin(0.3))
    assert frame.theta == pytest.approx(0.3)


def test_gaussian1d_density_normalized():
    g = Gaussian1D(1.3, 0.7)
    x = np.linspace(-10.0, 12.0, 2001)
    assert np.trapezoid(g.density(x), x) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        Gaussian1D(0.0, 0.0)


def test_symplectic_tomogram_moments():
    m = squeezed_case()
    frame = ReferenceFrame(0.7, -1.2)
    g = symplectic_tomogram(m, frame)
    assert g.mean == pytest.approx(0.7 * m.q_mean - 1.2 * m.p_mean)
    expected_var = (0.49 * m.s_qq + 1.44 * m.s_pp
                    + 2.0 * 0.7 * -1.2 * m.s_qp)
    assert g.variance == pytest.approx(expected_var)


def test_position_and_momentum_frames():
    m = squeezed_case()
    g_q = symplectic_tomogram(m, ReferenceFrame(1.0, 0.0))
    g_p = symplectic_tomogram(m, ReferenceFrame(0.0, 1.0))
    assert g_q.mean == pytest.approx(m.q_mean)
    assert g_q.variance == pytest.approx(m.s_qq)
    assert g_p.mean == pytest.approx(m.p_mean)
    assert g_p.variance == pytest.approx(m.s_pp)


def test_optical_tomogram_matches_symplectic():
    m = squeezed_case()
    theta = 1.1
    g_opt = optical_tomogram(m, theta)
    g_sym = symplectic_tomogram(m, ReferenceFrame.optical(theta))
    assert g_opt.mean == g_sym.mean
    assert g_opt.variance == g_sym.variance


def test_optical_to_symplectic_rescaling():
    m = squeezed_case()
    opt = lambda x, theta: tomogram_density(optical_tomogram(m, theta), x)
    frame = ReferenceFrame(3.0 * math.cos(0.4), 3.0 * math.sin(0.4))
    x = np.linspace(-8.0, 8.0, 33)
    got = optical_to_symplectic(opt, frame, x)
    want = tomogram_density(symplectic_tomogram(m, frame), x)
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_tomogram_homogeneity():
    # w(lambda X | lambda mu, lambda nu) = w(X | mu, nu) / |lambda|
    m = squeezed_case()
    x = np.linspace(-5.0, 5.0, 41)
    base = tomogram_density(symplectic_tomogram(m, ReferenceFrame(0.6, -0.8)), x)
    for lam in (-2.0, 0.5, 3.0):
        frame = ReferenceFrame(0.6 * lam, -0.8 * lam)
        scaled = tomogram_density(symplectic_tomogram(m, frame), lam * x)
        np.testing.assert_allclose(scaled, base / abs(lam), atol=1e-13)


def test_wigner_gaussian_peak_and_mass():
    grid = PhaseSpaceGrid(-6.0, 6.0, -6.0, 6.0, 301, 301)
    qq, pp = np.meshgrid(grid.q_axis, grid.p_axis, indexing="ij")
    vals = wigner_gaussian(VACUUM, qq, pp)
    # convention: integral W dq dp / (2 pi) = 1, so the vacuum peak is 2
    assert np.max(vals) == pytest.approx(2.0, rel=1e-12)
    assert grid.with_values(vals).mass() == pytest.approx(1.0, abs=1e-9)


def test_wigner_gaussian_rejects_unsaturated():
    m = PhaseSpaceMoments(t=0.0, q_mean=0.0, p_mean=0.0,
                          s_qq=0.5, s_pp=0.6, s_qp=0.0)
    with pytest.raises(ValueError):
        wigner_gaussian(m, 0.0, 0.0)


def test_wigner_from_density_matches_gaussian():
    point = driven_point()
    alpha = 1.0 + 2.0j
    m = phase_space_moments(alpha, point)
    half_q = 8.0 * math.sqrt(m.s_qq)
    half_p = 8.0 * math.sqrt(m.s_pp)
    grid = PhaseSpaceGrid(m.q_mean - half_q, m.q_mean + half_q,
                          m.p_mean - half_p, m.p_mean + half_p, 64, 64)
    got = wigner_from_density(lambda x: coherent_wavefunction(alpha, point, x),
                              grid, u_max=2.5 * 2.0 * half_q)
    qq, pp = np.meshgrid(grid.q_axis, grid.p_axis, indexing="ij")
    np.testing.assert_allclose(got.values, wigner_gaussian(m, qq, pp),
                               atol=1e-7)


def test_wigner_from_density_fock_negative_origin():
    from partomo import fock_wavefunction
    grid = PhaseSpaceGrid(-6.0, 6.0, -6.0, 6.0, 129, 129)
    got = wigner_from_density(lambda x: fock_wavefunction(1, REST, x),
                              grid, u_max=30.0, n_u=4097)
    # odd-parity state: W(0, 0) = -2 in this convention
    assert got.values[64, 64] == pytest.approx(-2.0, abs=1e-4)
    assert got.mass() == pytest.approx(1.0, abs=1e-6)


def test_wigner_from_density_truncation_guard():
    # a window that clips the wavepacket must be refused, not integrated
    grid = PhaseSpaceGrid(-0.5, 0.5, -6.0, 6.0, 16, 16)
    with pytest.raises(TruncationError):
        wigner_from_density(lambda x: coherent_wavefunction(2.0 + 0j, REST, x),
                            grid, u_max=5.0)


def test_radon_matches_analytic_tomogram():
    m = squeezed_case()
    half_q = 8.0 * math.sqrt(m.s_qq)
    half_p = 8.0 * math.sqrt(m.s_pp)
    grid = PhaseSpaceGrid(m.q_mean - half_q, m.q_mean + half_q,
                          m.p_mean - half_p, m.p_mean + half_p, 256, 256)
    qq, pp = np.meshgrid(grid.q_axis, grid.p_axis, indexing="ij")
    grid = grid.with_values(wigner_gaussian(m, qq, pp))
    for frame in (ReferenceFrame.optical(math.pi / 4.0),
                  ReferenceFrame(0.6, -0.8), ReferenceFrame(1.0, 0.0)):
        g = symplectic_tomogram(m, frame)
        sigma = math.sqrt(g.variance)
        xg = QuadratureGrid(g.mean - 8.0 * sigma, g.mean + 8.0 * sigma, 128)
        binned = radon_transform(grid, frame, xg)
        np.testing.assert_allclose(binned.values, tomogram_density(g, xg.axis),
                                   atol=1e-3)
        assert binned.integral() == pytest.approx(1.0, abs=1e-6)


def test_radon_truncation_guard():
    grid = PhaseSpaceGrid(-2.0, 2.0, -2.0, 2.0, 64, 64)
    qq, pp = np.meshgrid(grid.q_axis, grid.p_axis, indexing="ij")
    grid = grid.with_values(wigner_gaussian(VACUUM, qq, pp))
    # X window much narrower than the projected support
    xg = QuadratureGrid(-0.2, 0.2, 16)
    with pytest.raises(TruncationError):
        radon_transform(grid, ReferenceFrame(1.0, 0.0), xg)


def test_frft_vacuum_momentum_frame():
    psi = lambda x: coherent_wavefunction(0j, REST, x)
    dens = tomogram_via_fractional_fourier(psi, ReferenceFrame(0.0, 1.0),
                                           np.array([0.0]))
    assert dens[0] == pytest.approx(1.0 / math.sqrt(math.pi), abs=1e-10)


def test_frft_matches_analytic_tomogram():
    point = driven_point()
    alpha = 1.0 + 2.0j
    m = phase_space_moments(alpha, point)
    psi = lambda x: coherent_wavefunction(alpha, point, x)
    for frame in (ReferenceFrame.optical(math.pi / 4.0),
                  ReferenceFrame.optical(1.1), ReferenceFrame(0.9, -0.5)):
        g = symplectic_tomogram(m, frame)
        sigma = math.sqrt(g.variance)
        x = np.linspace(g.mean - 6.0 * sigma, g.mean + 6.0 * sigma, 61)
        dens = tomogram_via_fractional_fourier(psi, frame, x)
        np.testing.assert_allclose(dens, tomogram_density(g, x), atol=1e-6)


def test_frft_rejects_near_singular_frame():
    psi = lambda x: coherent_wavefunction(0j, REST, x)
    with pytest.raises(NearSingularFrameError):
        tomogram_via_fractional_fourier(psi, ReferenceFrame(1.0, FRFT_MIN_NU / 2.0),
                                        np.array([0.0]))


def test_inverse_radon_vacuum():
    tomo = lambda mu, nu: symplectic_tomogram(VACUUM, ReferenceFrame(mu, nu))
    for q, p in ((0.0, 0.0), (0.7, -0.3)):
        got = inverse_radon(tomo, q, p)
        assert got == pytest.approx(wigner_gaussian(VACUUM, q, p), abs=1e-4)


def test_inverse_radon_squeezed_state():
    m = squeezed_case()
    tomo = lambda mu, nu: symplectic_tomogram(m, ReferenceFrame(mu, nu))
    rng = np.random.default_rng(42)
    for _ in range(4):
        q = m.q_mean + rng.uniform(-2.0, 2.0)
        p = m.p_mean + rng.uniform(-2.0, 2.0)
        got = inverse_radon(tomo, q, p)
        assert got == pytest.approx(wigner_gaussian(m, q, p), abs=1e-4)


def test_gaussian_frame_weight_normalized():
    nodes = np.linspace(-6.0, 6.0, 401)
    vals = np.array([[gaussian_frame_weight(mu, nu) for nu in nodes]
                     for mu in nodes])
    total = np.trapezoid(np.trapezoid(vals, nodes, axis=1), nodes)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_joint_probability_normalized():
    m = squeezed_case()
    # even node counts keep the degenerate (0, 0) frame off the grid;
    # each slice is integrated over its own mean +- 10 sigma window
    nodes = np.linspace(-5.0, 5.0, 80)
    total = 0.0
    dmu = nodes[1] - nodes[0]
    for mu in nodes:
        for nu in nodes:
            frame = ReferenceFrame(mu, nu)
            g = symplectic_tomogram(m, frame)
            sigma = math.sqrt(g.variance)
            x = np.linspace(g.mean - 10.0 * sigma, g.mean + 10.0 * sigma, 161)
            joint = joint_probability(g, frame, x)
            total += np.trapezoid(joint, x) * dmu * dmu
    assert total == pytest.approx(1.0, abs=1e-6)


def test_bayes_recover_roundtrip():
    m = squeezed_case()
    frame = ReferenceFrame(0.8, 0.6)
    x = np.linspace(-10.0, 10.0, 101)
    g = symplectic_tomogram(m, frame)
    joint_fn = lambda xx, mu, nu: joint_probability(
        symplectic_tomogram(m, ReferenceFrame(mu, nu)),
        ReferenceFrame(mu, nu), xx)
    got = bayes_recover(joint_fn, frame, x)
    np.testing.assert_allclose(got, tomogram_density(g, x), atol=1e-13)


def test_bayes_recover_zero_weight():
    joint_fn = lambda xx, mu, nu: np.zeros_like(xx)
    with pytest.raises(ZeroDivisionError):
        bayes_recover(joint_fn, ReferenceFrame(1.0, 0.0), np.array([0.0]),
                      weight=lambda mu, nu: 0.0)


def test_phase_space_grid_validation():
    with pytest.raises(ValueError):
        PhaseSpaceGrid(1.0, -1.0, -1.0, 1.0)
    with pytest.raises(ValueError):
        PhaseSpaceGrid(-1.0, 1.0, -1.0, 1.0, n_q=4)
    grid = PhaseSpaceGrid(-1.0, 1.0, -2.0, 2.0, 16, 32)
    assert grid.q_axis.shape == (16,)
    assert grid.p_axis.shape == (32,)
    assert grid.dq == pytest.approx(2.0 / 15.0)


def test_quadrature_grid_validation():
    with pytest.raises(ValueError):
        QuadratureGrid(1.0, 0.0, 16)
    with pytest.raises(ValueError):
        QuadratureGrid(0.0, 1.0, 1)
    grid = QuadratureGrid(0.0, 1.0, 11)
    assert grid.dx == pytest.approx(0.1)
    with pytest.raises(ValueError):
        grid.integral()  # no values attached yet
