"""Command line interface.

Subcommands: ``trajectory``, ``tomogram``, ``wigner``, ``radon``,
``verify`` and ``report``.  All data commands emit CSV (UTF-8, LF,
floats as their shortest round-trip decimal, booleans as 0/1) either to
stdout or to ``--out``; given the same configuration the bytes are
identical run to run.  ``report`` additionally renders figures next to
the delimited files.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from .acceptance import run_criteria
from .analysis import squeezing_report
from .config import DEFAULT_DOCUMENT, ConfigError, ScenarioConfig, merge_overrides, parse_config
from .evolution import heisenberg_frame  # noqa: F401 - re-exported for API users
from .states import coherent_wavefunction, phase_space_moments
from .tomography import (
    PhaseSpaceGrid,
    QuadratureGrid,
    ReferenceFrame,
    radon_transform,
    symplectic_tomogram,
    tomogram_density,
    wigner_from_density,
    wigner_gaussian,
)
from .trajectory import ClassicalTrajectory, integrate_trajectory

__all__ = ["main"]


def _fmt(value: float) -> str:
    """Shortest decimal that round-trips the binary value ('0.0' -> '0')."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def _fmt_bool(flag: bool) -> str:
    return "1" if flag else "0"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="scenario document (defaults to the built-in scenario)")
    common.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                        dest="overrides", help="override a config key (repeatable)")
    common.add_argument("--out", metavar="PATH",
                        help="output file (default: stdout)")

    frame = argparse.ArgumentParser(add_help=False)
    frame.add_argument("--mu", type=float, help="frame component mu")
    frame.add_argument("--nu", type=float, help="frame component nu")
    frame.add_argument("--theta", type=float,
                       help="optical frame angle (mutually exclusive with --mu/--nu)")

    parser = argparse.ArgumentParser(
        prog="partomo",
        description="Quadrature tomograms of an oscillator with driven frequency",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("trajectory", parents=[common],
                   help="integrate the trajectory and emit variances and flags")

    p_tom = sub.add_parser("tomogram", parents=[common, frame],
                           help="analytic quadrature density in one frame")
    p_tom.add_argument("--t", type=float, required=True, help="trajectory time")

    p_wig = sub.add_parser("wigner", parents=[common],
                           help="Wigner function on a phase-space grid")
    p_wig.add_argument("--t", type=float, required=True, help="trajectory time")
    p_wig.add_argument("--source", choices=("analytic", "numeric"),
                       default="analytic",
                       help="closed form or density-matrix quadrature")

    p_rad = sub.add_parser("radon", parents=[common, frame],
                           help="bin a Wigner grid onto a quadrature axis")
    p_rad.add_argument("--t", type=float, required=True, help="trajectory time")
    p_rad.add_argument("--source", choices=("analytic", "numeric"),
                       default="numeric",
                       help="Wigner grid to bin (default numeric)")

    sub.add_parser("verify", parents=[common],
                   help="run the built-in acceptance criteria")

    p_rep = sub.add_parser("report", parents=[common],
                           help="write CSV data plus rendered figures")
    p_rep.add_argument("--out-dir", metavar="DIR", default="report",
                       help="directory for the report files (default: ./report)")
    return parser


def _load_config(args) -> ScenarioConfig:
    if args.config is not None:
        document = Path(args.config).read_text(encoding="utf-8")
    else:
        document = DEFAULT_DOCUMENT
    if args.overrides:
        document = merge_overrides(document, args.overrides)
    return parse_config(document)


def _emit(args, cfg: ScenarioConfig, lines: List[str]) -> None:
    text = "\n".join(lines) + "\n"
    target = args.out if args.out is not None else cfg.output_path
    if target is None:
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _frame_from_args(args) -> ReferenceFrame:
    has_mu_nu = args.mu is not None or args.nu is not None
    if args.theta is not None:
        if has_mu_nu:
            raise ConfigError("--theta cannot be combined with --mu/--nu")
        return ReferenceFrame.optical(args.theta)
    if args.mu is None or args.nu is None:
        raise ConfigError("either --theta or both --mu and --nu are required")
    return ReferenceFrame(args.mu, args.nu)


def _point_at(traj: ClassicalTrajectory, t: float):
    """Grid point for t, warning on stderr when meaningful snapping occurs."""
    index = traj.index_at(t)
    point = traj.points[index]
    if abs(point.t - t) > 1e-12:
        print(f"warning: t = {_fmt(t)} snapped to grid time {_fmt(point.t)}",
              file=sys.stderr)
    return point


def _auto_x_grid(cfg: ScenarioConfig, gauss, default_n: int) -> QuadratureGrid:
    n_x = cfg.n_x if cfg.n_x is not None else default_n
    if cfg.x_min is not None:
        return QuadratureGrid(cfg.x_min, cfg.x_max, n_x)
    spread = 8.0 * math.sqrt(gauss.variance)
    return QuadratureGrid(gauss.mean - spread, gauss.mean + spread, n_x)


def _auto_ps_grid(cfg: ScenarioConfig, m) -> PhaseSpaceGrid:
    if cfg.q_min is not None and cfg.p_min is not None:
        return PhaseSpaceGrid(cfg.q_min, cfg.q_max, cfg.p_min, cfg.p_max,
                              cfg.n_q, cfg.n_p)
    sq = 8.0 * math.sqrt(m.s_qq)
    sp = 8.0 * math.sqrt(m.s_pp)
    q_lo = cfg.q_min if cfg.q_min is not None else m.q_mean - sq
    q_hi = cfg.q_max if cfg.q_max is not None else m.q_mean + sq
    p_lo = cfg.p_min if cfg.p_min is not None else m.p_mean - sp
    p_hi = cfg.p_max if cfg.p_max is not None else m.p_mean + sp
    return PhaseSpaceGrid(q_lo, q_hi, p_lo, p_hi, cfg.n_q, cfg.n_p)


def _numeric_wigner(cfg: ScenarioConfig, point, m) -> PhaseSpaceGrid:
    grid = _auto_ps_grid(cfg, m)
    u_max = cfg.u_max if cfg.u_max is not None else 2.5 * (grid.q_max - grid.q_min)
    psi = lambda x: coherent_wavefunction(cfg.alpha, point, x)
    return wigner_from_density(psi, grid, u_max=u_max, n_u=cfg.n_u)


def _trajectory_lines(cfg: ScenarioConfig, traj: ClassicalTrajectory) -> List[str]:
    lines = ["t,re_eps,im_eps,re_deps,im_deps,var_q,var_p,cov_qp,r2,"
             "q_squeezed,p_squeezed,correlated"]
    for pt, rec in zip(traj, squeezing_report(traj, cfg.alpha)):
        cov_qp = (pt.deps * pt.eps.conjugate()).real / 2.0
        lines.append(",".join([
            _fmt(pt.t),
            _fmt(pt.eps.real), _fmt(pt.eps.imag),
            _fmt(pt.deps.real), _fmt(pt.deps.imag),
            _fmt(rec.var_q), _fmt(rec.var_p), _fmt(cov_qp), _fmt(rec.r_squared),
            _fmt_bool(rec.q_squeezed), _fmt_bool(rec.p_squeezed),
            _fmt_bool(rec.correlated),
        ]))
    return lines


def _cmd_trajectory(args) -> int:
    cfg = _load_config(args)
    traj = integrate_trajectory(cfg.profile, cfg.t_max, cfg.step,
                                check=not cfg.force_step)
    _emit(args, cfg, _trajectory_lines(cfg, traj))
    return 0


def _cmd_tomogram(args) -> int:
    cfg = _load_config(args)
    frame = _frame_from_args(args)
    traj = integrate_trajectory(cfg.profile, cfg.t_max, cfg.step,
                                check=not cfg.force_step)
    point = _point_at(traj, args.t)
    gauss = symplectic_tomogram(phase_space_moments(cfg.alpha, point), frame)
    x_grid = _auto_x_grid(cfg, gauss, default_n=201)
    density = tomogram_density(gauss, x_grid.axis)
    lines = [f"# mean={_fmt(gauss.mean)} variance={_fmt(gauss.variance)}",
             "X,density"]
    lines.extend(f"{_fmt(x)},{_fmt(d)}" for x, d in zip(x_grid.axis, density))
    _emit(args, cfg, lines)
    return 0


def _wigner_lines(grid: PhaseSpaceGrid) -> List[str]:
    lines = ["q,p,W"]
    q, p = grid.q_axis, grid.p_axis
    vals = grid.values
    for i in range(grid.n_q):
        for j in range(grid.n_p):
            lines.append(f"{_fmt(q[i])},{_fmt(p[j])},{_fmt(vals[i, j])}")
    return lines


def _cmd_wigner(args) -> int:
    cfg = _load_config(args)
    traj = integrate_trajectory(cfg.profile, cfg.t_max, cfg.step,
                                check=not cfg.force_step)
    point = _point_at(traj, args.t)
    m = phase_space_moments(cfg.alpha, point)
    if args.source == "numeric":
        grid = _numeric_wigner(cfg, point, m)
    else:
        grid = _auto_ps_grid(cfg, m)
        qq, pp = np.meshgrid(grid.q_axis, grid.p_axis, indexing="ij")
        grid = grid.with_values(wigner_gaussian(m, qq, pp))
    _emit(args, cfg, _wigner_lines(grid))
    return 0


def _cmd_radon(args) -> int:
    cfg = _load_config(args)
    frame = _frame_from_args(args)
    traj = integrate_trajectory(cfg.profile, cfg.t_max, cfg.step,
                                check=not cfg.force_step)
    point = _point_at(traj, args.t)
    m = phase_space_moments(cfg.alpha, point)
    if args.source == "numeric":
        w_grid = _numeric_wigner(cfg, point, m)
    else:
        w_grid = _auto_ps_grid(cfg, m)
        qq, pp = np.meshgrid(w_grid.q_axis, w_grid.p_axis, indexing="ij")
        w_grid = w_grid.with_values(wigner_gaussian(m, qq, pp))
    gauss = symplectic_tomogram(m, frame)
    x_grid = _auto_x_grid(cfg, gauss, default_n=128)
    binned = radon_transform(w_grid, frame, x_grid)
    lines = [f"# mu={_fmt(frame.mu)} nu={_fmt(frame.nu)} t={_fmt(point.t)}",
             "X,density"]
    lines.extend(f"{_fmt(x)},{_fmt(d)}" for x, d in zip(binned.axis, binned.values))
    _emit(args, cfg, lines)
    return 0


def _cmd_verify(args) -> int:
    cfg = _load_config(args)
    results = run_criteria(step=cfg.step, t_max=cfg.t_max, force=cfg.force_step)
    lines = [r.line() for r in results]
    n_failed = sum(not r.passed for r in results)
    lines.append(f"verify: {len(results) - n_failed}/{len(results)} criteria passed")
    _emit(args, cfg, lines)
    return 0 if n_failed == 0 else 1


def _cmd_report(args) -> int:
    from . import plotting  # costly import, keep out of the data commands

    cfg = _load_config(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    traj = integrate_trajectory(cfg.profile, cfg.t_max, cfg.step,
                                check=not cfg.force_step)
    records = squeezing_report(traj, cfg.alpha)

    def write(name: str, lines: List[str]) -> None:
        (out_dir / name).write_text("\n".join(lines) + "\n", encoding="utf-8")

    write("trajectory.csv", _trajectory_lines(cfg, traj))
    plotting.plot_trajectory(records, str(out_dir / "trajectory.png"))

    point = traj.points[-1]
    m = phase_space_moments(cfg.alpha, point)
    curves = {}
    x_grid = _auto_x_grid(cfg, symplectic_tomogram(m, ReferenceFrame(1.0, 0.0)),
                          default_n=201)
    tomogram_lines = None
    for label, theta in (("theta=0", 0.0), ("theta=pi/4", math.pi / 4.0),
                         ("theta=pi/2", math.pi / 2.0)):
        gauss = symplectic_tomogram(m, ReferenceFrame.optical(theta))
        curves[label] = tomogram_density(gauss, x_grid.axis)
        if tomogram_lines is None:
            tomogram_lines = [
                f"# mean={_fmt(gauss.mean)} variance={_fmt(gauss.variance)}",
                "X,density"]
            tomogram_lines.extend(
                f"{_fmt(x)},{_fmt(d)}" for x, d in zip(x_grid.axis, curves[label]))
    write("tomogram.csv", tomogram_lines)
    plotting.plot_tomogram(x_grid.axis, curves, str(out_dir / "tomogram.png"))

    grid = _auto_ps_grid(cfg, m)
    qq, pp = np.meshgrid(grid.q_axis, grid.p_axis, indexing="ij")
    grid = grid.with_values(wigner_gaussian(m, qq, pp))
    write("wigner.csv", _wigner_lines(grid))
    plotting.plot_wigner(grid, str(out_dir / "wigner.png"))
    print(f"report written to {out_dir}", file=sys.stderr)
    return 0


_COMMANDS = {
    "trajectory": _cmd_trajectory,
    "tomogram": _cmd_tomogram,
    "wigner": _cmd_wigner,
    "radon": _cmd_radon,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
