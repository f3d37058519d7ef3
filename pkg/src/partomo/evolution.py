"""Tomogram time evolution by substitution of the frame arguments.

For quadratic Hamiltonians the Heisenberg quadratures stay linear in the
initial ones: q_H = Re(eps) q + Im(eps) p and p_H = Re(deps) q + Im(deps) p.
The delta function in the tomogram definition then turns the evolved
tomogram into the initial one evaluated in a transported frame, so no
differential equation has to be solved on the distribution itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .tomography import ReferenceFrame
from .trajectory import TrajectoryPoint

__all__ = ["HeisenbergFrame", "heisenberg_frame", "propagate_tomogram"]

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class HeisenbergFrame:
    """Frame transported to time t along the classical trajectory."""

    mu_h: float
    nu_h: float
    t: float


def heisenberg_frame(frame: ReferenceFrame, point: TrajectoryPoint) -> HeisenbergFrame:
    """Transport the frame (mu, nu) to time t.

    mu_H = mu Re(eps) + nu Re(deps),
    nu_H = mu Im(eps) + nu Im(deps).

    The map has unit determinant (it inherits the Wronskian), so it never
    collapses a valid frame onto (0, 0).
    """
    e, de = point.eps, point.deps
    return HeisenbergFrame(
        mu_h=frame.mu * e.real + frame.nu * de.real,
        nu_h=frame.mu * e.imag + frame.nu * de.imag,
        t=point.t,
    )


def propagate_tomogram(initial: Callable[[ArrayLike, float, float], ArrayLike],
                       frame: ReferenceFrame, point: TrajectoryPoint,
                       x: ArrayLike) -> ArrayLike:
    """Evolved tomogram w(X | mu, nu, t) = w_0(X | mu_H, nu_H).

    ``initial`` is the t = 0 tomogram as a function (X, mu, nu) -> density.
    """
    hf = heisenberg_frame(frame, point)
    return initial(x, hf.mu_h, hf.nu_h)
