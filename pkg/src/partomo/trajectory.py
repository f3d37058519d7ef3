"""Complex classical trajectories for an oscillator with time-dependent frequency.

Everything downstream (wavefunctions, covariances, tomograms) is built from a
single complex solution eps(t) of

    eps'' + omega(t)^2 eps = 0,    eps(0) = 1,  eps'(0) = 1j.

These initial conditions pin the Wronskian combination
``eps' eps* - eps'* eps`` at 2i for all times, which is what makes the
derived Gaussian states stay normalized and saturate the uncertainty bound.
The continuous phase of eps is tracked alongside the solution because the
square-root prefactor of the wavefunctions needs a branch that never jumps.
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "ProfileError",
    "StepTooCoarseError",
    "IntegrationDivergedError",
    "ConstantProfile",
    "PiecewiseConstantProfile",
    "SinusoidalProfile",
    "TabulatedProfile",
    "FrequencyProfile",
    "TrajectoryPoint",
    "ClassicalTrajectory",
    "omega_at",
    "integrate_trajectory",
    "wronskian",
    "closed_form_piecewise",
    "closed_form_grid",
    "MAX_STEP",
    "WRONSKIAN_TOL",
]

# Unit initial frequency is assumed by the reference vacuum; an explicit
# override flag on each profile permits omega(0) != 1.
UNIT_START_TOL = 1e-12

# Largest integration step accepted without forcing.
MAX_STEP = 1e-2

# Allowed Wronskian drift per unit integrated time (plus one).
WRONSKIAN_TOL = 1e-9


class ProfileError(ValueError):
    """A frequency profile is ill-formed or evaluated outside its domain."""


class StepTooCoarseError(ValueError):
    """The integration step cannot resolve the motion (phase slips >= pi)."""


class IntegrationDivergedError(RuntimeError):
    """The Wronskian invariant drifted beyond tolerance during integration."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ProfileError(f"{name} must be finite, got {value!r}")
    return value


def _check_unit_start(profile, omega0: float) -> None:
    if profile.allow_nonunit_omega0:
        return
    if abs(omega0 - 1.0) > UNIT_START_TOL:
        raise ProfileError(
            f"omega(0) = {omega0!r} but the reference vacuum assumes omega(0) = 1; "
            "pass allow_nonunit_omega0=True to override"
        )


def _check_time_table(times: Sequence[float], omegas: Sequence[float]):
    times = tuple(float(t) for t in times)
    omegas = tuple(float(w) for w in omegas)
    if len(times) != len(omegas) or not times:
        raise ProfileError("times and omegas must be non-empty and equally long")
    if times[0] != 0.0:
        raise ProfileError(f"time list must start at 0, got {times[0]!r}")
    for a, b in zip(times, times[1:]):
        if not b > a:
            raise ProfileError(f"times must be strictly increasing, got {a!r} >= {b!r}")
    for w in omegas:
        _require_finite("omega", w)
        if w <= 0.0:
            raise ProfileError(f"omega values must be positive, got {w!r}")
    for t in times:
        _require_finite("time", t)
    return times, omegas


@dataclass(frozen=True)
class ConstantProfile:
    """Fixed frequency omega(t) = omega0."""

    omega0: float = 1.0
    allow_nonunit_omega0: bool = False

    def __post_init__(self):
        _require_finite("omega0", self.omega0)
        if self.omega0 <= 0.0:
            raise ProfileError(f"omega0 must be positive, got {self.omega0!r}")
        _check_unit_start(self, self.omega0)

    def omega(self, t: float) -> float:
        return self.omega0


@dataclass(frozen=True)
class PiecewiseConstantProfile:
    """Frequency constant on left-closed intervals [t_k, t_{k+1})."""

    times: tuple
    omegas: tuple
    allow_nonunit_omega0: bool = False

    def __post_init__(self):
        times, omegas = _check_time_table(self.times, self.omegas)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "omegas", omegas)
        _check_unit_start(self, omegas[0])

    def omega(self, t: float) -> float:
        return self.omegas[bisect_right(self.times, t) - 1]


@dataclass(frozen=True)
class SinusoidalProfile:
    """Modulated squared frequency omega^2(t) = omega0^2 (1 + kappa cos(gamma t))."""

    omega0: float
    kappa: float
    gamma: float
    allow_nonunit_omega0: bool = False

    def __post_init__(self):
        _require_finite("omega0", self.omega0)
        _require_finite("kappa", self.kappa)
        _require_finite("gamma", self.gamma)
        if self.omega0 <= 0.0:
            raise ProfileError(f"omega0 must be positive, got {self.omega0!r}")
        if abs(self.kappa) >= 1.0:
            raise ProfileError(
                f"modulation depth must satisfy |kappa| < 1, got {self.kappa!r}"
            )
        _check_unit_start(self, self.omega(0.0))

    def omega(self, t: float) -> float:
        return self.omega0 * math.sqrt(1.0 + self.kappa * math.cos(self.gamma * t))


@dataclass(frozen=True)
class TabulatedProfile:
    """Frequency linearly interpolated between samples, clamped past the ends."""

    times: tuple
    omegas: tuple
    allow_nonunit_omega0: bool = False

    def __post_init__(self):
        times, omegas = _check_time_table(self.times, self.omegas)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "omegas", omegas)
        _check_unit_start(self, omegas[0])

    def omega(self, t: float) -> float:
        # np.interp clamps on both sides; t < 0 is rejected by omega_at.
        return float(np.interp(t, self.times, self.omegas))


FrequencyProfile = Union[
    ConstantProfile, PiecewiseConstantProfile, SinusoidalProfile, TabulatedProfile
]


def omega_at(profile: FrequencyProfile, t: float) -> float:
    """Evaluate the instantaneous frequency omega(t) for t >= 0."""
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise ProfileError(f"time must be finite and non-negative, got {t!r}")
    return profile.omega(t)


@dataclass(frozen=True)
class TrajectoryPoint:
    """State of the complex trajectory at one instant.

    ``eps_phase`` is the continuously unwound argument of eps, i.e. it agrees
    with ``cmath.phase(eps)`` modulo 2 pi but never jumps at branch cuts.
    """

    t: float
    eps: complex
    deps: complex
    eps_phase: float


def wronskian(point: TrajectoryPoint) -> complex:
    """Invariant eps' eps* - eps'* eps; equals 2i for an exact trajectory."""
    w = point.deps * point.eps.conjugate()
    return w - w.conjugate()


class ClassicalTrajectory:
    """Trajectory sampled on the uniform grid t = 0, step, 2 step, ..., t_max."""

    def __init__(self, profile: FrequencyProfile, step: float,
                 points: Sequence[TrajectoryPoint]):
        self.profile = profile
        self.step = float(step)
        self.points = tuple(points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def t_max(self) -> float:
        return self.points[-1].t

    def times(self) -> np.ndarray:
        return np.array([p.t for p in self.points])

    def index_at(self, t: float) -> int:
        """Grid index closest to t; raises if t falls outside the grid range."""
        t = float(t)
        k = round(t / self.step)
        if k < 0 or k >= len(self.points) or abs(t - k * self.step) > self.step / 2 + 1e-12:
            raise ValueError(
                f"t = {t!r} is outside the trajectory grid [0, {self.t_max!r}]"
            )
        return k

    def point_at(self, t: float) -> TrajectoryPoint:
        return self.points[self.index_at(t)]


def integrate_trajectory(profile: FrequencyProfile, t_max: float, step: float,
                         *, check: bool = True) -> ClassicalTrajectory:
    """Integrate eps'' = -omega(t)^2 eps with classic fixed-step RK4.

    Parameters
    ----------
    profile : FrequencyProfile
        Frequency law omega(t).  An interior frequency jump costs one
        reduced-order step even when it falls on the grid (the last stage
        of the step ending there samples the new segment), leaving a
        localized O(step) error; `closed_form_piecewise` and
        `closed_form_grid` are exact for piecewise profiles.
    t_max : float
        Final time; must be a whole number of steps.
    step : float
        Grid spacing.  At most ``MAX_STEP`` unless ``check=False``.
    check : bool
        When True (default), enforce the step bound and abort with
        ``IntegrationDivergedError`` as soon as the Wronskian drifts more
        than ``WRONSKIAN_TOL * (1 + t)``.  Disabling the checks is meant for
        deliberately coarse diagnostic runs; the phase-continuity guard
        stays active either way.

    Returns
    -------
    ClassicalTrajectory
        Points at every grid time including t = 0 and t = t_max.
    """
    t_max = float(t_max)
    step = float(step)
    if not math.isfinite(t_max) or t_max <= 0.0:
        raise ValueError(f"t_max must be positive and finite, got {t_max!r}")
    if not math.isfinite(step) or step <= 0.0:
        raise ValueError(f"step must be positive and finite, got {step!r}")
    if check and step > MAX_STEP:
        raise StepTooCoarseError(
            f"step = {step!r} exceeds {MAX_STEP}; pass check=False to force"
        )
    n = round(t_max / step)
    if n < 1 or abs(n * step - t_max) > 1e-9 * (1.0 + t_max):
        raise ValueError(f"t_max = {t_max!r} is not a whole number of steps {step!r}")

    om = profile.omega
    e = 1.0 + 0.0j
    de = 1.0j
    phase = 0.0
    points = [TrajectoryPoint(0.0, e, de, phase)]
    half = step / 2.0
    for k in range(n):
        t = k * step
        # RK4 on the first-order system (eps, deps).
        w2 = om(t) ** 2
        a1, b1 = de, -w2 * e
        w2 = om(t + half) ** 2
        a2, b2 = de + half * b1, -w2 * (e + half * a1)
        a3, b3 = de + half * b2, -w2 * (e + half * a2)
        w2 = om(t + step) ** 2
        a4, b4 = de + step * b3, -w2 * (e + step * a3)
        e_new = e + step / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        de_new = de + step / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)

        if e_new == 0.0:
            raise IntegrationDivergedError(f"eps vanished at t = {t + step!r}")
        inc = cmath.phase(e_new / e)
        if abs(inc) >= math.pi - 1e-12:
            raise StepTooCoarseError(
                f"phase advanced by {inc!r} rad in one step near t = {t + step!r}; "
                "the step cannot resolve the rotation of eps"
            )
        phase += inc
        e, de = e_new, de_new
        t_new = (k + 1) * step
        if check:
            drift = abs(2.0 * (de * e.conjugate()).imag - 2.0)
            if drift > WRONSKIAN_TOL * (1.0 + t_new):
                raise IntegrationDivergedError(
                    f"Wronskian drifted by {drift:.3e} at t = {t_new!r}"
                )
        points.append(TrajectoryPoint(t_new, e, de, phase))
    return ClassicalTrajectory(profile, step, points)


def _segment_table(profile) -> tuple:
    if isinstance(profile, ConstantProfile):
        return (0.0,), (profile.omega0,)
    if isinstance(profile, PiecewiseConstantProfile):
        return profile.times, profile.omegas
    raise ProfileError(
        "closed-form evaluation requires a constant or piecewise-constant profile"
    )


def _rotate(e: complex, de: complex, w: float, dt: float):
    # Exact constant-frequency propagation of (eps, deps) over dt.
    c, s = math.cos(w * dt), math.sin(w * dt)
    return e * c + de * (s / w), -e * (w * s) + de * c


def closed_form_piecewise(profile: FrequencyProfile, t: float) -> TrajectoryPoint:
    """Exact trajectory point for a (piecewise) constant profile.

    Within each constant segment the solution is a rotation,

        eps(t) = eps_k cos(w dt) + (deps_k / w) sin(w dt),
        deps(t) = -eps_k w sin(w dt) + deps_k cos(w dt),

    matched continuously across segment boundaries.  The continuous phase is
    accumulated by sub-stepping the exact solution, so the result is exact in
    (eps, deps) and exact-to-roundoff in the unwound phase.
    """
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise ProfileError(f"time must be finite and non-negative, got {t!r}")
    times, omegas = _segment_table(profile)
    e, de = 1.0 + 0.0j, 1.0j
    phase = 0.0
    tau = 0.0
    for k, w in enumerate(omegas):
        seg_end = times[k + 1] if k + 1 < len(times) else t
        seg_end = min(seg_end, t)
        while tau < seg_end:
            # Keep each exact sub-step small enough that the phase increment
            # stays well inside (-pi, pi): d(arg eps)/dt = 1 / |eps|^2.
            dt = min(seg_end - tau, 0.1 / w, 0.1 * abs(e) ** 2)
            e_new, de_new = _rotate(e, de, w, dt)
            phase += cmath.phase(e_new / e)
            e, de = e_new, de_new
            tau += dt
        if tau >= t:
            break
    return TrajectoryPoint(t, e, de, phase)


def closed_form_grid(profile: FrequencyProfile, times_out: np.ndarray):
    """Exact (eps, deps) arrays of `closed_form_piecewise` on a sorted time grid.

    Vectorized per segment; used as the oracle when comparing whole
    trajectories, where point-by-point sub-stepping would be wasteful.
    """
    times_out = np.asarray(times_out, dtype=float)
    if times_out.ndim != 1 or len(times_out) == 0:
        raise ValueError("times_out must be a non-empty 1-d array")
    if np.any(times_out < 0) or np.any(np.diff(times_out) < 0):
        raise ValueError("times_out must be sorted and non-negative")
    seg_times, seg_omegas = _segment_table(profile)
    eps_out = np.empty(len(times_out), dtype=complex)
    deps_out = np.empty(len(times_out), dtype=complex)
    e, de = 1.0 + 0.0j, 1.0j
    t_end = float(times_out[-1])
    pos = 0
    for k, w in enumerate(seg_omegas):
        t0 = seg_times[k]
        t1 = seg_times[k + 1] if k + 1 < len(seg_times) else math.inf
        hi = min(t1, t_end)
        sel = slice(pos, int(np.searchsorted(times_out, hi, side="right" if t1 > t_end else "left")))
        dt = times_out[sel] - t0
        c, s = np.cos(w * dt), np.sin(w * dt)
        eps_out[sel] = e * c + de * (s / w)
        deps_out[sel] = -e * (w * s) + de * c
        pos = sel.stop
        if t1 <= t_end:
            e, de = _rotate(e, de, w, t1 - t0)
        if pos >= len(times_out):
            break
    return eps_out, deps_out
