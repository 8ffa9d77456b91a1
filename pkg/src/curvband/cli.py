"""Command-line entry point: geometry | gauge-check | spectrum | evolve.

Every run is driven by one YAML config (see config module); selected keys
can be overridden by flags.  Outputs are deterministic CSV files plus a
run_summary.txt with the config echo, Hermiticity report and decoupling
ratio.  Numbers are written with 17 significant digits and no timestamps,
so identical inputs produce byte-identical files.

CURVBAND_THREADS > 1 fans independent azimuthal channels out to a thread
pool; results are written in channel order regardless.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import config as cfgmod
from . import fields as fieldmod
from . import geometry, operator, solver
from .errors import CurvbandError

COMMANDS = ("geometry", "gauge-check", "spectrum", "evolve")
GAUGE_TOL = 1e-10


def _fmt(x) -> str:
    return f"{x:.17g}"


def write_csv(path: Path, header, rows) -> None:
    """Write rows of numbers; on failure leave a trailing error marker."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        try:
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        except Exception as exc:
            fh.write(f"# ERROR: {exc}\n")
            raise


def _thread_count() -> int:
    raw = os.environ.get("CURVBAND_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _solve_channels(profile, field, grid, config):
    """Build and solve one operator per azimuthal index, optionally in parallel."""
    def one(m):
        op = operator.build_tangential(profile, field, m, grid,
                                       mode=config.mode, e=config.charge_e)
        return op, solver.eigen_solve(op, config.k_eigen)

    workers = min(_thread_count(), len(config.m_list))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, config.m_list))
    return [one(m) for m in config.m_list]


def _summary_lines(config, profile, field, grid):
    op = operator.build_tangential(profile, field, config.m_list[0], grid,
                                   mode=config.mode, e=config.charge_e)
    herm = solver.hermiticity_report(op)
    dec = operator.decoupling_check(config.omega, field, profile, grid)
    lines = [
        f"mode: {config.mode}",
        f"hermiticity: max_asymmetry={_fmt(herm.max_asymmetry)} "
        f"relative={_fmt(herm.relative_asymmetry)} "
        f"antihermitian_norm={_fmt(herm.antihermitian_norm)} "
        f"coupling_equality={herm.coupling_equality}",
        f"decoupling: omega={_fmt(dec.omega)} ratio={_fmt(dec.ratio)} "
        f"passed={dec.passed} chart_ok={dec.chart_ok}",
    ]
    return lines, op


def run_command(config: cfgmod.RunConfig, command: str, output_dir=None) -> int:
    """Execute one subcommand; returns the process exit status."""
    if command not in COMMANDS:
        raise CurvbandError(f"unknown command {command!r}")
    out = Path(output_dir if output_dir is not None else config.output_path)
    out.mkdir(parents=True, exist_ok=True)

    profile = cfgmod.make_profile(config)
    field = cfgmod.make_field(config, profile)
    grid = cfgmod.make_grid(config)

    summary, op0 = _summary_lines(config, profile, field, grid)
    extra = []

    if command == "geometry":
        nodes = grid.nodes
        Z, H, K = geometry.curvatures(profile, nodes)
        rows = ((nodes[j], Z[j], H[j], K[j], H[j] ** 2 - K[j], 1.0)
                for j in range(len(nodes)))
        write_csv(out / "geometry.csv",
                  ["rho", "Z", "H", "K", "Hsq_minus_K", "F_at_q0"], rows)
        extra.append(f"geometry.csv: {len(nodes)} nodes")

    elif command == "gauge-check":
        report = fieldmod.is_coulomb_gauge(field, profile, grid, GAUGE_TOL)
        values = [fieldmod.divergence(field, profile, float(r), 0.0,
                                      step_rho=grid.spacing)
                  for r in grid.nodes]
        write_csv(out / "gauge_check.csv", ["rho", "divergence"],
                  zip(grid.nodes, values))
        extra.append(
            f"gauge-check: passed={report.passed} "
            f"max_violation={_fmt(report.max_violation)} "
            f"at_rho={_fmt(report.at_rho)} tol={_fmt(report.tol)}"
        )
        if report.note:
            extra.append(f"gauge-check note: {report.note}")

    elif command == "spectrum":
        results = _solve_channels(profile, field, grid, config)

        def rows():
            for op, spec in results:
                for idx, (val, res) in enumerate(
                        zip(spec.eigenvalues, spec.residuals)):
                    yield (op.m, idx, val.real, val.imag, res)

        write_csv(out / "spectrum.csv",
                  ["m", "index", "re_E", "im_E", "residual"], rows())
        channel = operator.normal_channel(config.omega, config.n_normal)
        ground = results[0][1].eigenvalues[0]
        combined = solver.total_energy(results[0][1], channel)[0]
        extra.append(f"normal channel: omega={_fmt(config.omega)} "
                     f"n={config.n_normal} E_q={_fmt(channel.energy)}")
        extra.append(f"ground total (m={config.m_list[0]}): "
                     f"re={_fmt(combined.real)} im={_fmt(combined.imag)} "
                     f"tangential re={_fmt(ground.real)}")

    elif command == "evolve":
        initial = solver.ground_state(op0)
        trace = solver.evolve(op0, initial, config.dt, config.steps,
                              record_states=False)
        write_csv(out / "trace.csv", ["t", "norm", "log_norm"],
                  ((trace.times[j], trace.norms[j], float(np.log(trace.norms[j])))
                   for j in range(len(trace.times))))
        avg = solver.weighted_coupling(op0, initial)
        extra.append(f"log-norm slope: {_fmt(trace.log_norm_slope)}")
        extra.append(f"weighted coupling <e A3 H>: {_fmt(avg)}")
        extra.append(f"norm ratio: {_fmt(trace.norms[-1] / trace.norms[0])}")

    with open(out / "run_summary.txt", "w", encoding="utf-8") as fh:
        fh.write(f"command: {command}\n")
        for line in summary + extra:
            fh.write(line + "\n")
        fh.write("config:\n")
        for line in cfgmod.serialize_config(config).splitlines():
            fh.write("  " + line + "\n")
    return 0


def _apply_overrides(config: cfgmod.RunConfig, args) -> cfgmod.RunConfig:
    if args.mode is not None:
        if args.mode not in operator.MODES:
            raise CurvbandError(f"--mode must be one of {operator.MODES}")
        config.mode = args.mode
    if args.m is not None:
        try:
            config.m_list = [int(v) for v in args.m.split(",")]
        except ValueError:
            raise CurvbandError(f"--m expects integers like '0,1,2', got {args.m!r}")
    if args.n_points is not None:
        if args.n_points < cfgmod.MIN_N_POINTS:
            raise CurvbandError(f"--n-points must be >= {cfgmod.MIN_N_POINTS}")
        config.grid.n_points = args.n_points
    if args.dt is not None:
        if args.dt <= 0:
            raise CurvbandError("--dt must be > 0")
        config.dt = args.dt
    if args.steps is not None:
        if args.steps < 1:
            raise CurvbandError("--steps must be >= 1")
        config.steps = args.steps
    return config


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="curvband",
        description="Spectra and norm dynamics of a charged particle bound "
                    "to an axisymmetric curved surface in a static vector potential",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--output", default=None, help="output directory")
        p.add_argument("--mode", default=None, choices=list(operator.MODES))
        p.add_argument("--m", default=None,
                       help="comma-separated azimuthal indices, e.g. 0,1,2")
        p.add_argument("--n-points", type=int, default=None)
        p.add_argument("--dt", type=float, default=None)
        p.add_argument("--steps", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    try:
        config = _apply_overrides(cfgmod.parse_config(text), args)
        return run_command(config, args.command, output_dir=args.output)
    except CurvbandError as exc:
        print(f"error: {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
