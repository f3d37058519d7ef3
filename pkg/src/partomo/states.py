"""Gaussian and number states of the driven mode, and their second moments.

All states are parametrized by a single trajectory point (eps, deps); the
complex label alpha picks the displaced state.  Wavefunctions are evaluated
with one complex exponential per sample so that the large cancelling terms
for big |alpha| never overflow individually.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .trajectory import TrajectoryPoint

__all__ = [
    "ALPHA_MAX",
    "HERMITE_MAX_DEGREE",
    "PhaseSpaceMoments",
    "check_alpha",
    "phase_space_moments",
    "hermite",
    "vacuum_wavefunction",
    "coherent_wavefunction",
    "fock_wavefunction",
    "density_matrix",
]

# Bound on |alpha|: keeps every exponent in the wavefunctions within the
# range where the combined complex exponential is still accurate.
ALPHA_MAX = 1e3

HERMITE_MAX_DEGREE = 200

ArrayLike = Union[float, np.ndarray]


def check_alpha(alpha: complex) -> complex:
    """Validate a coherent-state label: finite with |alpha| <= ALPHA_MAX."""
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise ValueError(f"alpha must be finite, got {alpha!r}")
    if abs(alpha) > ALPHA_MAX:
        raise ValueError(f"|alpha| = {abs(alpha)!r} exceeds {ALPHA_MAX}")
    return alpha


@dataclass(frozen=True)
class PhaseSpaceMoments:
    """First and second moments of position and momentum at one instant.

    For the states built here the covariance matrix always saturates the
    Schroedinger-Robertson bound, det Sigma = 1/4 (hbar = 1).
    """

    t: float
    q_mean: float
    p_mean: float
    s_qq: float
    s_pp: float
    s_qp: float

    def __post_init__(self):
        for name in ("t", "q_mean", "p_mean", "s_qq", "s_pp", "s_qp"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.s_qq <= 0.0 or self.s_pp <= 0.0:
            raise ValueError("variances must be positive")

    @property
    def covariance(self) -> np.ndarray:
        return np.array([[self.s_qq, self.s_qp], [self.s_qp, self.s_pp]])

    @property
    def det_sigma(self) -> float:
        return self.s_qq * self.s_pp - self.s_qp**2


def phase_space_moments(alpha: complex, point: TrajectoryPoint) -> PhaseSpaceMoments:
    """Moments of the displaced Gaussian state with label alpha.

    The means follow the classical trajectory,
    ``<q> = sqrt(2) Re(alpha eps*)`` and ``<p> = sqrt(2) Re(alpha deps*)``;
    the covariances are alpha-independent:
    ``s_qq = |eps|^2 / 2``, ``s_pp = |deps|^2 / 2``,
    ``s_qp = Re(deps eps*) / 2``.
    """
    alpha = check_alpha(alpha)
    e, de = point.eps, point.deps
    rt2 = math.sqrt(2.0)
    return PhaseSpaceMoments(
        t=point.t,
        q_mean=rt2 * (alpha * e.conjugate()).real,
        p_mean=rt2 * (alpha * de.conjugate()).real,
        s_qq=abs(e) ** 2 / 2.0,
        s_pp=abs(de) ** 2 / 2.0,
        s_qp=(de * e.conjugate()).real / 2.0,
    )


def hermite(n: int, x: ArrayLike) -> ArrayLike:
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence.

    H_{n+1}(x) = 2 x H_n(x) - 2 n H_{n-1}(x); exact for integer arguments of
    moderate size and adequate up to the supported degree of 200.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValueError(f"degree must be an integer, got {n!r}")
    if n < 0 or n > HERMITE_MAX_DEGREE:
        raise ValueError(f"degree must lie in [0, {HERMITE_MAX_DEGREE}], got {n}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h, h_prev = 2.0 * x * h - 2.0 * k * h_prev, h
    return h if h.ndim else float(h)


def _hermite_unit(n: int, x: np.ndarray) -> np.ndarray:
    # H_n(x) / sqrt(2^n n!) by a rescaled recurrence; never overflows for
    # degrees <= 200 at any argument the Gaussian factor has not killed.
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h = x * math.sqrt(2.0)
    for k in range(1, n):
        h, h_prev = (x * math.sqrt(2.0 / (k + 1)) * h
                     - math.sqrt(k / (k + 1.0)) * h_prev), h
    return h


def _as_result(values: np.ndarray, scalar: bool):
    return complex(values[()]) if scalar else values


def vacuum_wavefunction(point: TrajectoryPoint, x: ArrayLike) -> Union[complex, np.ndarray]:
    """Gaussian ground-state wavefunction carried along the trajectory.

    psi_0(x) = pi^{-1/4} eps^{-1/2} exp(i deps x^2 / (2 eps)) where the
    square root uses the continuously tracked phase of eps,
    eps^{-1/2} = |eps|^{-1/2} exp(-i eps_phase / 2).
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    e, de = point.eps, point.deps
    expo = 0.5j * (de / e) * x**2 - 0.5j * point.eps_phase
    values = math.pi**-0.25 * abs(e) ** -0.5 * np.exp(expo)
    return _as_result(values, scalar)


def coherent_wavefunction(alpha: complex, point: TrajectoryPoint,
                          x: ArrayLike) -> Union[complex, np.ndarray]:
    """Displaced Gaussian wavefunction with coherent label alpha.

    Relative to the ground state the exponent gains
    ``-|alpha|^2 / 2 + sqrt(2) alpha x / eps - alpha^2 eps* / (2 eps)``.
    The whole exponent is assembled before exponentiating: its real part is
    O(1) at the wavepacket even though single terms reach |alpha|^2 / 2.
    """
    alpha = check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    e, de = point.eps, point.deps
    expo = (0.5j * (de / e) * x**2
            - 0.5j * point.eps_phase
            - 0.5 * abs(alpha) ** 2
            + math.sqrt(2.0) * alpha / e * x
            - 0.5 * alpha**2 * e.conjugate() / e)
    values = math.pi**-0.25 * abs(e) ** -0.5 * np.exp(expo)
    return _as_result(values, scalar)


def fock_wavefunction(n: int, point: TrajectoryPoint,
                      x: ArrayLike) -> Union[complex, np.ndarray]:
    """Number-state wavefunction of the driven mode.

    psi_n(x) = (eps*/eps)^{n/2} psi_0(x) H_n(x / |eps|) / sqrt(2^n n!) with
    the branch fixed by the unwound phase, (eps*/eps)^{n/2} = e^{-i n phase}.
    The factorial scaling is folded into the Hermite recurrence so that the
    evaluation stays in range up to n = 200.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValueError(f"n must be an integer, got {n!r}")
    if n < 0 or n > HERMITE_MAX_DEGREE:
        raise ValueError(f"n must lie in [0, {HERMITE_MAX_DEGREE}], got {n}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    e, de = point.eps, point.deps
    expo = 0.5j * (de / e) * x**2 - 1j * (n + 0.5) * point.eps_phase
    values = (math.pi**-0.25 * abs(e) ** -0.5 * np.exp(expo)
              * _hermite_unit(n, x / abs(e)))
    return _as_result(values, scalar)


def density_matrix(psi: Callable[[np.ndarray], np.ndarray],
                   x: ArrayLike, xp: ArrayLike) -> Union[complex, np.ndarray]:
    """Pure-state density matrix rho(x, x') = psi(x) psi*(x')."""
    left = np.asarray(psi(np.asarray(x, dtype=float)))
    right = np.conj(np.asarray(psi(np.asarray(xp, dtype=float))))
    scalar = left.ndim == 0 and right.ndim == 0
    values = np.multiply.outer(left, right)
    return _as_result(values, scalar)
