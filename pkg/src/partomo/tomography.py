"""Symplectic and optical tomograms, Wigner functions, and their transforms.

A tomogram is the distribution of the rotated-and-scaled quadrature
X = mu q + nu p.  For the Gaussian states of this package every tomogram is
a normal density whose mean and variance follow directly from the phase
space moments, which gives an analytic reference for the two integral
routes implemented here (a fractional Fourier transform of the
wavefunction, and a Radon-style binning of the Wigner function).

Conventions: hbar = 1 and the Wigner function is normalized by
``integral W dq dp / (2 pi) = 1``, so a pure Gaussian peaks at 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

import numpy as np

from .states import PhaseSpaceMoments

__all__ = [
    "FrameError",
    "NearSingularFrameError",
    "TruncationError",
    "QuadratureError",
    "ReferenceFrame",
    "Gaussian1D",
    "PhaseSpaceGrid",
    "QuadratureGrid",
    "symplectic_tomogram",
    "optical_tomogram",
    "optical_to_symplectic",
    "tomogram_density",
    "wigner_gaussian",
    "wigner_from_density",
    "radon_transform",
    "inverse_radon",
    "tomogram_via_fractional_fourier",
    "gaussian_frame_weight",
    "joint_probability",
    "bayes_recover",
    "FRFT_MIN_NU",
]

# Below this |nu| the fractional-Fourier kernel is numerically singular; the
# analytic route has no such limit, so the failure is signalled instead of
# silently switching.
FRFT_MIN_NU = 1e-3

# Edge-decay thresholds for the grid transforms.
PSI_EDGE_TOL = 1e-12
WIGNER_EDGE_TOL = 1e-10
WIGNER_IMAG_TOL = 1e-8
RECON_IMAG_TOL = 1e-4
SATURATION_TOL = 1e-8

ArrayLike = Union[float, np.ndarray]


class FrameError(ValueError):
    """Degenerate tomography frame (mu, nu) = (0, 0)."""


class NearSingularFrameError(ValueError):
    """|nu| too small for the fractional-Fourier route."""


class TruncationError(ValueError):
    """A grid does not cover the support of the transformed object."""


class QuadratureError(RuntimeError):
    """A quadrature left a residue that should have cancelled."""


@dataclass(frozen=True)
class ReferenceFrame:
    """Quadrature frame X = mu q + nu p."""

    mu: float
    nu: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.nu)):
            raise FrameError(f"frame must be finite, got ({self.mu!r}, {self.nu!r})")
        if self.mu == 0.0 and self.nu == 0.0:
            raise FrameError("frame (0, 0) does not define a quadrature")

    @classmethod
    def optical(cls, theta: float) -> "ReferenceFrame":
        """Pure rotation frame (cos theta, sin theta)."""
        return cls(math.cos(theta), math.sin(theta))

    @property
    def scale(self) -> float:
        return math.hypot(self.mu, self.nu)

    @property
    def theta(self) -> float:
        return math.atan2(self.nu, self.mu)


@dataclass(frozen=True)
class Gaussian1D:
    """Normal density used for the analytic tomograms."""

    mean: float
    variance: float

    def __post_init__(self):
        if not (math.isfinite(self.mean) and math.isfinite(self.variance)):
            raise ValueError("mean and variance must be finite")
        if self.variance <= 0.0:
            raise ValueError(f"variance must be positive, got {self.variance!r}")

    def density(self, x: ArrayLike) -> ArrayLike:
        x = np.asarray(x, dtype=float)
        out = (np.exp(-((x - self.mean) ** 2) / (2.0 * self.variance))
               / math.sqrt(2.0 * math.pi * self.variance))
        return float(out[()]) if out.ndim == 0 else out


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Uniformly sampled rectangle in (q, p), optionally carrying values."""

    q_min: float
    q_max: float
    p_min: float
    p_max: float
    n_q: int = 256
    n_p: int = 256
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        if not (self.q_max > self.q_min and self.p_max > self.p_min):
            raise ValueError("grid bounds must be ordered")
        if self.n_q < 8 or self.n_p < 8:
            raise ValueError("grid needs at least 8 points per axis")
        if self.values is not None and self.values.shape != (self.n_q, self.n_p):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.n_q}, {self.n_p})"
            )

    @property
    def q_axis(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    @property
    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)

    @property
    def dq(self) -> float:
        return (self.q_max - self.q_min) / (self.n_q - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.n_p - 1)

    def with_values(self, values: np.ndarray) -> "PhaseSpaceGrid":
        return replace(self, values=np.asarray(values))

    def mass(self) -> float:
        """Cell-sum normalization integral W dq dp / (2 pi)."""
        if self.values is None:
            raise ValueError("grid carries no values")
        return float(self.values.sum()) * self.dq * self.dp / (2.0 * math.pi)


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniformly sampled quadrature axis, optionally carrying a density."""

    x_min: float
    x_max: float
    n_x: int = 128
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ValueError("grid bounds must be ordered")
        if self.n_x < 2:
            raise ValueError("grid needs at least 2 points")
        if self.values is not None and self.values.shape != (self.n_x,):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid ({self.n_x},)"
            )

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_x)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_x - 1)

    def with_values(self, values: np.ndarray) -> "QuadratureGrid":
        return replace(self, values=np.asarray(values))

    def integral(self) -> float:
        if self.values is None:
            raise ValueError("grid carries no values")
        return float(np.trapezoid(self.values, dx=self.dx))


def symplectic_tomogram(m: PhaseSpaceMoments, frame: ReferenceFrame) -> Gaussian1D:
    """Analytic tomogram of a Gaussian state in the frame X = mu q + nu p.

    mean = mu <q> + nu <p>,
    variance = mu^2 s_qq + nu^2 s_pp + 2 mu nu s_qp.
    """
    mean = frame.mu * m.q_mean + frame.nu * m.p_mean
    variance = (frame.mu**2 * m.s_qq + frame.nu**2 * m.s_pp
                + 2.0 * frame.mu * frame.nu * m.s_qp)
    if variance <= 0.0:
        raise ValueError(
            f"non-positive tomogram variance {variance!r}; moments are inconsistent"
        )
    return Gaussian1D(mean, variance)


def optical_tomogram(m: PhaseSpaceMoments, theta: float) -> Gaussian1D:
    """Tomogram in the pure rotation frame (cos theta, sin theta)."""
    return symplectic_tomogram(m, ReferenceFrame.optical(theta))


def optical_to_symplectic(opt: Callable[[ArrayLike, float], ArrayLike],
                          frame: ReferenceFrame, x: ArrayLike) -> ArrayLike:
    """Rebuild a symplectic tomogram from an optical one by homogeneity.

    w(X | mu, nu) = s^{-1} w_opt(X / s, theta) with s = sqrt(mu^2 + nu^2)
    and theta = atan2(nu, mu).
    """
    s = frame.scale
    return opt(np.asarray(x, dtype=float) / s, frame.theta) / s


def tomogram_density(g: Gaussian1D, x: ArrayLike) -> ArrayLike:
    """Evaluate the tomogram density at the quadrature values x."""
    return g.density(x)


def wigner_gaussian(m: PhaseSpaceMoments, q: ArrayLike, p: ArrayLike) -> ArrayLike:
    """Analytic Wigner function of a Gaussian state (peak value 2).

    W(q, p) = 2 exp(-(1/2) d^T Sigma^{-1} d) with d = (q - <q>, p - <p>);
    valid because det Sigma = 1/4 for the saturating states built here.
    """
    det = m.det_sigma
    if det <= 0.0:
        raise ValueError(f"covariance matrix is singular (det = {det!r})")
    if abs(det - 0.25) > SATURATION_TOL:
        raise ValueError(
            f"det Sigma = {det!r} is not 1/4; the Gaussian closed form assumes "
            "a minimum-uncertainty state"
        )
    dq = np.asarray(q, dtype=float) - m.q_mean
    dp = np.asarray(p, dtype=float) - m.p_mean
    quad = (m.s_pp * dq**2 - 2.0 * m.s_qp * dq * dp + m.s_qq * dp**2) / det
    out = 2.0 * np.exp(-0.5 * quad)
    return float(out[()]) if np.ndim(out) == 0 else out


def wigner_from_density(psi: Callable[[np.ndarray], np.ndarray],
                        grid: PhaseSpaceGrid, u_max: float,
                        n_u: int = 2049) -> PhaseSpaceGrid:
    """Wigner function by direct quadrature of the density matrix.

    W(q, p) = integral rho(q + u/2, q - u/2) exp(-i p u) du, evaluated with
    the trapezoid rule on a symmetric u grid.  The wavefunction must have
    decayed below PSI_EDGE_TOL at the extreme sample positions, otherwise
    the transform is truncated and an error is raised.  The imaginary part
    of the result is a pure quadrature residue and must stay below
    WIGNER_IMAG_TOL.
    """
    if u_max <= 0.0 or not math.isfinite(u_max):
        raise ValueError(f"u_max must be positive and finite, got {u_max!r}")
    if n_u < 8:
        raise ValueError("n_u must be at least 8")
    q = grid.q_axis
    p = grid.p_axis
    for edge in (grid.q_min, grid.q_max):
        for sign in (1.0, -1.0):
            tail = abs(psi(np.asarray(edge + sign * u_max / 2.0)))
            if float(tail) > PSI_EDGE_TOL:
                raise TruncationError(
                    f"|psi({edge + sign * u_max / 2.0!r})| = {float(tail):.3e} "
                    f"exceeds {PSI_EDGE_TOL}; enlarge u_max or the grid"
                )
    u = np.linspace(-u_max, u_max, n_u)
    du = u[1] - u[0]
    weights = np.full(n_u, du)
    weights[0] = weights[-1] = du / 2.0
    rho = psi(q[:, None] + u[None, :] / 2.0) * np.conj(psi(q[:, None] - u[None, :] / 2.0))
    w = (rho * weights) @ np.exp(-1j * np.outer(u, p))
    residue = float(np.max(np.abs(w.imag)))
    if residue > WIGNER_IMAG_TOL:
        raise QuadratureError(
            f"imaginary residue {residue:.3e} exceeds {WIGNER_IMAG_TOL}; "
            "the u quadrature is under-resolved"
        )
    return grid.with_values(w.real)


def radon_transform(w: PhaseSpaceGrid, frame: ReferenceFrame,
                    x_grid: QuadratureGrid) -> QuadratureGrid:
    """Bin the Wigner mass onto the quadrature axis of a frame.

    Each grid cell carries mass W dq dp / (2 pi).  A cell is not a point:
    its projection onto X = mu q + nu p covers an interval of length
    |mu| dq + |nu| dp, so the mass is spread uniformly over that interval
    and split between the X bins it overlaps (bins are centred on the
    samples).  Point-assignment would alias badly whenever the projected
    cell lattice is commensurate with the bin width; the overlap split is
    exact for the piecewise-constant interpolant of W and keeps the error
    down to the smoothing bias of one cell plus one bin.
    """
    if w.values is None:
        raise ValueError("Wigner grid carries no values")
    vals = w.values
    edge_density = max(
        float(np.max(np.abs(vals[0, :]))), float(np.max(np.abs(vals[-1, :]))),
        float(np.max(np.abs(vals[:, 0]))), float(np.max(np.abs(vals[:, -1]))),
    )
    if edge_density > WIGNER_EDGE_TOL:
        raise TruncationError(
            f"Wigner density {edge_density:.3e} at the grid edge exceeds "
            f"{WIGNER_EDGE_TOL}; the state is not covered"
        )
    q = w.q_axis
    p = w.p_axis
    dx = x_grid.dx
    n_x = x_grid.n_x
    s = (frame.mu * q[:, None] + frame.nu * p[None, :]).ravel()
    mass = (vals * (w.dq * w.dp / (2.0 * math.pi))).ravel()
    half = (abs(frame.mu) * w.dq + abs(frame.nu) * w.dp) / 2.0
    lo = s - half
    hi = s + half
    first_edge = x_grid.x_min - dx / 2.0
    k_lo = np.floor((lo - first_edge) / dx).astype(int)
    acc = np.zeros(n_x)
    for j in range(int(2.0 * half / dx) + 2):
        k = k_lo + j
        seg_lo = np.maximum(lo, first_edge + k * dx)
        seg_hi = np.minimum(hi, first_edge + (k + 1) * dx)
        overlap = np.clip(seg_hi - seg_lo, 0.0, None)
        valid = (k >= 0) & (k < n_x) & (overlap > 0.0)
        np.add.at(acc, k[valid], (mass * overlap)[valid] / (2.0 * half))
    acc /= dx
    if float(acc.min()) < -1e-9:
        raise QuadratureError(
            f"binned tomogram has negative density {float(acc.min()):.3e}"
        )
    return x_grid.with_values(acc)


def inverse_radon(tomo: Callable[[float, float], Gaussian1D],
                  q: float, p: float, *, cutoff: float = 8.0,
                  n_nodes: int = 257) -> float:
    """Reconstruct the Wigner function from Gaussian tomogram slices.

    For a Gaussian slice the X integral of the inversion formula is the
    characteristic function at unit argument,

        integral w(X | mu, nu) e^{iX} dX = exp(i mean - variance / 2),

    which reduces the reconstruction to a 2-d oscillatory integral over the
    frame plane, evaluated with the trapezoid rule on
    [-cutoff, cutoff]^2.  ``tomo`` maps a frame (mu, nu) to its Gaussian1D
    slice.  The imaginary part of the result must cancel to below
    RECON_IMAG_TOL.
    """
    if cutoff <= 0.0 or n_nodes < 16:
        raise ValueError("cutoff must be positive and n_nodes at least 16")
    nodes = np.linspace(-cutoff, cutoff, n_nodes)
    h = nodes[1] - nodes[0]
    weights = np.full(n_nodes, h)
    weights[0] = weights[-1] = h / 2.0
    mean = np.empty((n_nodes, n_nodes))
    var = np.empty((n_nodes, n_nodes))
    for i, mu in enumerate(nodes):
        for j, nu in enumerate(nodes):
            if mu == 0.0 and nu == 0.0:
                # The zero frame is degenerate but its characteristic value
                # is exactly 1 (a point mass at X = 0 with zero variance).
                mean[i, j] = 0.0
                var[i, j] = 0.0
                continue
            g = tomo(mu, nu)
            mean[i, j] = g.mean
            var[i, j] = g.variance
    mu_grid = nodes[:, None]
    nu_grid = nodes[None, :]
    integrand = np.exp(1j * (mean - mu_grid * q - nu_grid * p) - var / 2.0)
    value = complex(weights @ integrand @ weights) / (2.0 * math.pi)
    if abs(value.imag) > RECON_IMAG_TOL:
        raise QuadratureError(
            f"imaginary residue {value.imag:.3e} exceeds {RECON_IMAG_TOL}"
        )
    return value.real


def tomogram_via_fractional_fourier(psi: Callable[[np.ndarray], np.ndarray],
                                    frame: ReferenceFrame, x: ArrayLike,
                                    *, y_max: float = 12.0,
                                    n_y: int = 4096) -> ArrayLike:
    """Tomogram as the squared fractional Fourier transform of psi.

    w(X | mu, nu) = (1 / 2 pi |nu|) | integral psi(y)
                    exp(i mu y^2 / (2 nu) - i X y / nu) dy |^2.

    The kernel degenerates as nu -> 0; below FRFT_MIN_NU the call fails,
    use the analytic route (`symplectic_tomogram`) there instead.
    """
    if abs(frame.nu) <= FRFT_MIN_NU:
        raise NearSingularFrameError(
            f"|nu| = {abs(frame.nu)!r} <= {FRFT_MIN_NU}: the fractional-Fourier "
            "kernel is singular; use symplectic_tomogram for such frames"
        )
    if y_max <= 0.0 or n_y < 16:
        raise ValueError("y_max must be positive and n_y at least 16")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x1 = np.atleast_1d(x)
    y = np.linspace(-y_max, y_max, n_y)
    weights = np.full(n_y, y[1] - y[0])
    weights[0] = weights[-1] = (y[1] - y[0]) / 2.0
    chirped = psi(y) * np.exp(0.5j * frame.mu * y**2 / frame.nu) * weights
    amplitude = np.exp(-1j * np.outer(x1, y) / frame.nu) @ chirped
    out = np.abs(amplitude) ** 2 / (2.0 * math.pi * abs(frame.nu))
    return float(out[0]) if scalar else out


def gaussian_frame_weight(mu: float, nu: float) -> float:
    """Default frame weight P(mu, nu) = exp(-mu^2 - nu^2) / pi."""
    return math.exp(-(mu**2) - nu**2) / math.pi


def joint_probability(g: Gaussian1D, frame: ReferenceFrame, x: ArrayLike,
                      weight: Optional[Callable[[float, float], float]] = None
                      ) -> ArrayLike:
    """Joint density w(X, mu, nu) = w(X | mu, nu) P(mu, nu).

    The weight must be a normalized probability density on the frame plane;
    by default the isotropic Gaussian `gaussian_frame_weight` is used.
    """
    if weight is None:
        weight = gaussian_frame_weight
    return g.density(x) * weight(frame.mu, frame.nu)


def bayes_recover(joint: Callable[[ArrayLike, float, float], ArrayLike],
                  frame: ReferenceFrame, x: ArrayLike,
                  weight: Optional[Callable[[float, float], float]] = None
                  ) -> ArrayLike:
    """Conditional tomogram w(X | mu, nu) = w(X, mu, nu) / P(mu, nu)."""
    if weight is None:
        weight = gaussian_frame_weight
    p = weight(frame.mu, frame.nu)
    if p <= 0.0:
        raise ZeroDivisionError(
            f"frame weight is {p!r} at ({frame.mu!r}, {frame.nu!r}); "
            "the conditional density is undefined there"
        )
    return joint(x, frame.mu, frame.nu) / p
