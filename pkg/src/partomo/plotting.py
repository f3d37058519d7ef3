"""Matplotlib renderings of trajectory reports, tomograms and Wigner maps.

Only the ``report`` command touches this module; the data commands stay
plot-free.  Figures are written straight to files with the Agg backend so
the CLI works on headless machines.
"""

from __future__ import annotations

from typing import Dict, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402 - backend must be set first
import numpy as np

from .analysis import SqueezingRecord
from .tomography import PhaseSpaceGrid

__all__ = ["plot_trajectory", "plot_tomogram", "plot_wigner"]


def plot_trajectory(records: Sequence[SqueezingRecord], path: str) -> None:
    """Variance evolution and correlation; squeezed stretches dip below 1/2."""
    t = np.array([r.t for r in records])
    var_q = np.array([r.var_q for r in records])
    var_p = np.array([r.var_p for r in records])
    r2 = np.array([r.r_squared for r in records])

    fig, (ax_var, ax_r2) = plt.subplots(
        2, 1, figsize=(7.0, 5.0), sharex=True,
        gridspec_kw={"height_ratios": [2, 1]},
    )
    ax_var.plot(t, var_q, label="var q", lw=1.0)
    ax_var.plot(t, var_p, label="var p", lw=1.0)
    ax_var.axhline(0.5, color="0.4", lw=0.8, ls="--", label="vacuum level")
    ax_var.set_yscale("log")
    ax_var.set_ylabel("variance")
    ax_var.legend(loc="upper right", fontsize=8)
    ax_r2.plot(t, r2, color="C3", lw=1.0)
    ax_r2.set_xlabel("t")
    ax_r2.set_ylabel(r"$r^2$")
    ax_r2.set_ylim(-0.05, 1.0)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_tomogram(x: np.ndarray, curves: Dict[str, np.ndarray], path: str) -> None:
    """Overlay quadrature densities for a handful of frames."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, values in curves.items():
        ax.plot(x, values, lw=1.2, label=label)
    ax.set_xlabel("X")
    ax.set_ylabel("density")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_wigner(grid: PhaseSpaceGrid, path: str) -> None:
    """Filled map of the Wigner function on its grid."""
    if grid.values is None:
        raise ValueError("grid carries no values")
    fig, ax = plt.subplots(figsize=(5.4, 4.5))
    peak = float(np.max(np.abs(grid.values)))
    mesh = ax.pcolormesh(
        grid.q_axis, grid.p_axis, grid.values.T,
        cmap="RdBu_r", vmin=-peak, vmax=peak, shading="auto",
    )
    fig.colorbar(mesh, ax=ax, label="W")
    ax.set_xlabel("q")
    ax.set_ylabel("p")
    ax.set_aspect("equal", adjustable="box")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
