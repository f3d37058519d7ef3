import math

import numpy as np
import pytest

from partomo import (
    ALPHA_MAX,
    HERMITE_MAX_DEGREE,
    ConstantProfile,
    PiecewiseConstantProfile,
    SinusoidalProfile,
    check_alpha,
    closed_form_piecewise,
    coherent_wavefunction,
    density_matrix,
    fock_wavefunction,
    hermite,
    integrate_trajectory,
    phase_space_moments,
    vacuum_wavefunction,
)
from partomo.trajectory import TrajectoryPoint

REST = TrajectoryPoint(0.0, 1.0 + 0.0j, 1.0j, 0.0)

X_WIDE = np.linspace(-12.0, 12.0, 4001)


def norm(psi_values):
    return np.trapezoid(np.abs(psi_values) ** 2, X_WIDE)


def driven_point(t=1.7):
    prof = SinusoidalProfile(1.0, 0.5, 2.0, allow_nonunit_omega0=True)
    traj = integrate_trajectory(prof, 2.0, 1e-3)
    return traj.point_at(t)


def test_check_alpha():
    assert check_alpha(1.0 + 2.0j) == 1.0 + 2.0j
    with pytest.raises(ValueError):
        check_alpha(complex(math.inf, 0.0))
    with pytest.raises(ValueError):
        check_alpha(complex(ALPHA_MAX * 2.0, 0.0))


def test_hermite_small_orders():
    x = np.linspace(-3.0, 3.0, 7)
    np.testing.assert_allclose(hermite(0, x), np.ones_like(x))
    np.testing.assert_allclose(hermite(1, x), 2.0 * x)
    assert hermite(1, 2.0) == 4.0
    assert hermite(3, 1.0) == -4.0
    np.testing.assert_allclose(hermite(3, x), 8.0 * x**3 - 12.0 * x, atol=1e-12)


def test_hermite_recurrence_consistency():
    rng = np.random.default_rng(7)
    x = rng.uniform(-2.0, 2.0, 50)
    # H_{n+1} = 2x H_n - 2n H_{n-1}
    for n in range(1, 12):
        lhs = hermite(n + 1, x)
        rhs = 2.0 * x * hermite(n, x) - 2.0 * n * hermite(n - 1, x)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


def test_hermite_rejects_bad_degree():
    with pytest.raises(ValueError):
        hermite(-1, 0.0)
    with pytest.raises(ValueError):
        hermite(True, 0.0)
    with pytest.raises(ValueError):
        hermite(2.0, 0.0)
    with pytest.raises(ValueError):
        hermite(HERMITE_MAX_DEGREE + 1, 0.0)


def test_vacuum_at_rest_is_ground_state():
    psi = vacuum_wavefunction(REST, X_WIDE)
    expected = math.pi ** (-0.25) * np.exp(-X_WIDE**2 / 2.0)
    np.testing.assert_allclose(psi, expected, atol=1e-14)
    assert isinstance(vacuum_wavefunction(REST, 0.3), complex)


def test_vacuum_normalized_when_driven():
    point = driven_point()
    assert norm(vacuum_wavefunction(point, X_WIDE)) == pytest.approx(1.0, abs=1e-10)


def test_coherent_reduces_to_vacuum():
    point = driven_point()
    np.testing.assert_allclose(coherent_wavefunction(0j, point, X_WIDE),
                               vacuum_wavefunction(point, X_WIDE), atol=1e-15)


def test_coherent_normalized():
    point = driven_point()
    for alpha in (1.0 + 0.0j, 1.0 + 2.0j, -2.5 + 0.3j):
        assert norm(coherent_wavefunction(alpha, point, X_WIDE)) == \
            pytest.approx(1.0, abs=1e-9)


def test_coherent_large_alpha_stable():
    # assembling the exponent in one piece keeps huge |alpha| finite
    center = math.sqrt(2.0) * 1000.0
    x = np.linspace(center - 10.0, center + 10.0, 2001)
    psi = coherent_wavefunction(1000.0 + 0.0j, REST, x)
    assert np.all(np.isfinite(psi))
    # exponent terms of size alpha^2 cancel to O(1); a few digits are spent
    assert abs(coherent_wavefunction(1000.0 + 0.0j, REST, center)) == \
        pytest.approx(math.pi ** (-0.25), rel=1e-8)
    assert np.trapezoid(np.abs(psi) ** 2, x) == pytest.approx(1.0, abs=1e-9)


def test_coherent_rejects_oversize_alpha():
    with pytest.raises(ValueError):
        coherent_wavefunction(complex(2.0 * ALPHA_MAX, 0.0), REST, 0.0)


def test_fock_matches_static_oscillator():
    for n in (0, 1, 2, 5):
        psi = fock_wavefunction(n, REST, X_WIDE)
        herm = hermite(n, X_WIDE)
        expected = (math.pi ** (-0.25) / math.sqrt(2.0**n * math.factorial(n))
                    * herm * np.exp(-X_WIDE**2 / 2.0))
        np.testing.assert_allclose(psi, expected, atol=1e-12)


def test_fock_orthonormal_when_driven():
    point = driven_point()
    states = [fock_wavefunction(n, point, X_WIDE) for n in range(6)]
    for i in range(6):
        for j in range(6):
            overlap = np.trapezoid(np.conj(states[i]) * states[j], X_WIDE)
            np.testing.assert_allclose(overlap, 1.0 if i == j else 0.0,
                                       atol=1e-10)


def test_fock_high_order_no_overflow():
    point = driven_point()
    x = np.linspace(-25.0, 25.0, 6001)
    psi = fock_wavefunction(HERMITE_MAX_DEGREE, point, x)
    assert np.all(np.isfinite(psi))
    assert np.trapezoid(np.abs(psi) ** 2, x) == pytest.approx(1.0, abs=1e-8)


def test_fock_generating_function_builds_coherent():
    # sum_n alpha^n / sqrt(n!) e^{-|alpha|^2/2} psi_n reproduces the coherent
    # state; this ties the Fock phase convention to the coherent one.
    point = driven_point()
    x = np.linspace(-4.0, 4.0, 9)
    alpha = 0.7 - 0.4j
    acc = np.zeros_like(x, dtype=complex)
    term = 1.0 + 0.0j
    for n in range(60):
        if n > 0:
            term *= alpha / math.sqrt(n)
        acc += term * fock_wavefunction(n, point, x)
    acc *= math.exp(-abs(alpha) ** 2 / 2.0)
    np.testing.assert_allclose(acc, coherent_wavefunction(alpha, point, x),
                               atol=1e-12)


def test_moments_at_rest():
    m = phase_space_moments(1.0 + 2.0j, REST)
    assert m.q_mean == pytest.approx(math.sqrt(2.0))
    assert m.p_mean == pytest.approx(2.0 * math.sqrt(2.0))
    assert m.s_qq == pytest.approx(0.5)
    assert m.s_pp == pytest.approx(0.5)
    assert m.s_qp == pytest.approx(0.0)


def test_moments_rotate_with_free_evolution():
    # omega = 1, alpha = 1: the mean orbit is (sqrt2 cos t, -sqrt2 sin t)
    prof = PiecewiseConstantProfile((0.0,), (1.0,))
    point = closed_form_piecewise(prof, math.pi / 2.0)
    m = phase_space_moments(1.0 + 0.0j, point)
    assert m.q_mean == pytest.approx(0.0, abs=1e-12)
    assert m.p_mean == pytest.approx(-math.sqrt(2.0))


def test_moments_match_wavefunction_expectations():
    point = driven_point()
    alpha = 1.0 + 2.0j
    m = phase_space_moments(alpha, point)
    psi = coherent_wavefunction(alpha, point, X_WIDE)
    prob = np.abs(psi) ** 2
    q_mean = np.trapezoid(X_WIDE * prob, X_WIDE)
    s_qq = np.trapezoid((X_WIDE - q_mean) ** 2 * prob, X_WIDE)
    assert m.q_mean == pytest.approx(q_mean, abs=1e-9)
    assert m.s_qq == pytest.approx(s_qq, abs=1e-9)
    # central-difference momentum expectation; gradient is 2nd order in dx
    dpsi = np.gradient(psi, X_WIDE)
    p_mean = np.trapezoid(np.conj(psi) * -1j * dpsi, X_WIDE).real
    assert m.p_mean == pytest.approx(p_mean, abs=1e-4)


def test_det_sigma_saturates():
    point = driven_point()
    for alpha in (0j, 1.0 + 2.0j):
        m = phase_space_moments(alpha, point)
        assert m.det_sigma == pytest.approx(0.25, abs=1e-12)
        cov = m.covariance
        assert cov.shape == (2, 2)
        assert cov[0, 1] == cov[1, 0] == m.s_qp


def test_moments_reject_bad_alpha():
    with pytest.raises(ValueError):
        phase_space_moments(complex(math.nan, 0.0), REST)


def test_density_matrix_properties():
    point = driven_point()
    x = np.linspace(-6.0, 6.0, 201)
    rho = density_matrix(lambda y: coherent_wavefunction(1.0 + 0.0j, point, y),
                         x, x)
    assert rho.shape == (201, 201)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)
    trace = np.trapezoid(np.diagonal(rho).real, x)
    assert trace == pytest.approx(1.0, abs=1e-9)
