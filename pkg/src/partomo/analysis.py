"""Squeezing and uncertainty diagnostics along a trajectory.

The q-p correlation grows whenever |eps deps| leaves 1, and the variances
dip below the vacuum value 1/2 whenever |eps|^2 or |deps|^2 drop below 1.
Both effects are tied together by the saturation identity
var_q var_p (1 - r^2) = 1/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple

from .states import PhaseSpaceMoments, check_alpha
from .trajectory import ClassicalTrajectory, TrajectoryPoint

__all__ = [
    "SQUEEZE_TOL",
    "SqueezingRecord",
    "UncertaintyProducts",
    "correlation_coefficient_sq",
    "uncertainty_products",
    "squeezing_report",
]

# Flags use strict inequalities with this absolute tolerance band, so states
# sitting exactly on the vacuum level are never reported as squeezed.
SQUEEZE_TOL = 1e-12


@dataclass(frozen=True)
class SqueezingRecord:
    """Variances, correlation and squeezing flags at one trajectory point."""

    t: float
    var_q: float
    var_p: float
    r_squared: float
    q_squeezed: bool
    p_squeezed: bool
    correlated: bool


class UncertaintyProducts(NamedTuple):
    heisenberg: float   # var_q * var_p
    robertson: float    # var_q * var_p - cov_qp^2


def correlation_coefficient_sq(point: TrajectoryPoint) -> float:
    """Squared q-p correlation coefficient r^2 = 1 - |eps deps|^{-2}.

    Clamped into [0, 1); |eps deps| >= 1 is guaranteed by the Wronskian, so
    values below 1 - 1e-9 indicate a broken trajectory and raise.
    """
    a = abs(point.eps * point.deps)
    if a < 1.0 - 1e-9:
        raise ValueError(
            f"|eps deps| = {a!r} < 1 violates the Wronskian bound at t = {point.t!r}"
        )
    return min(max(0.0, 1.0 - 1.0 / a**2), math.nextafter(1.0, 0.0))


def uncertainty_products(m: PhaseSpaceMoments) -> UncertaintyProducts:
    """Heisenberg product var_q var_p and its Robertson refinement."""
    return UncertaintyProducts(
        heisenberg=m.s_qq * m.s_pp,
        robertson=m.s_qq * m.s_pp - m.s_qp**2,
    )


def squeezing_report(traj: ClassicalTrajectory,
                     alpha: complex = 0j) -> List[SqueezingRecord]:
    """Squeezing flags for the displaced state alpha along the trajectory.

    The variances and flags do not depend on alpha (displacement moves only
    the means); the label is accepted and validated so reports can be tied
    to a concrete state.
    """
    check_alpha(alpha)
    records = []
    for pt in traj:
        ee = abs(pt.eps) ** 2
        dd = abs(pt.deps) ** 2
        records.append(SqueezingRecord(
            t=pt.t,
            var_q=ee / 2.0,
            var_p=dd / 2.0,
            r_squared=correlation_coefficient_sq(pt),
            q_squeezed=ee < 1.0 - SQUEEZE_TOL,
            p_squeezed=dd < 1.0 - SQUEEZE_TOL,
            correlated=ee * dd > 1.0 + SQUEEZE_TOL,
        ))
    return records
