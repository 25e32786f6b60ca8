"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 numerical singularity,
4 I/O failure.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from .config import RunConfig, SweepSpec, load_config
from .errors import ConfigError, EmptySolutionError, PoleError, SingularConfigurationError
from .presets import FINE_GRID, PRESETS, preset_config
from .runner import emit_csv, eigen_csv, format_csv, run_config, run_sweep, steady_csv
from .spectra import Grid
from .steady import solve_steady_state

log = logging.getLogger("magnoamp")

EXIT_OK, EXIT_CONFIG, EXIT_SINGULAR, EXIT_IO = 0, 2, 3, 4


def _grid(text: str) -> Grid:
    try:
        start, stop, points = text.split(":")
        return Grid(float(start), float(stop), int(points))
    except ValueError as exc:
        raise ConfigError(f"bad --grid {text!r} (want start:stop:points): {exc}",
                          key="--grid") from None


def _load(args) -> RunConfig:
    if getattr(args, "name", None):
        try:
            cfg = preset_config(args.name)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0]), key="preset") from None
    elif args.config:
        cfg = load_config(args.config)
    else:
        cfg = RunConfig()
    if args.kappa2 is not None:
        cfg = cfg.with_values(kappa_2_over_2pi_MHz=args.kappa2)
    if args.grid:
        cfg = replace(cfg, grid=_grid(args.grid))
    return cfg


def _emit(text: str, out):
    data = text.encode("utf-8")
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(text)


def cmd_steady(args):
    cfg = _load(args)
    if not cfg.params.drive_derived:
        raise ConfigError("steady needs parameterization = drive-derived", key="parameterization")
    states = solve_steady_state(cfg.params, cfg.drive_config, cfg.detunings())
    _emit(steady_csv(states), args.out)


def cmd_spectrum(args):
    cfg = _load(args)
    _emit(format_csv(run_config(cfg), cfg.outputs), args.out)


def cmd_delay(args):
    cfg = _load(args)
    if not args.grid and args.config is None and not getattr(args, "name", None):
        cfg = replace(cfg, grid=Grid(cfg.grid.start, cfg.grid.stop, FINE_GRID.points))
    _emit(format_csv(run_config(cfg), ("delta_over_omega_b", "phi_t", "tau_g", "divergent")),
          args.out)


def cmd_preset(args):
    cfg = _load(args)
    table = run_config(cfg)
    if args.out:
        emit_csv(table, args.out, cfg.outputs)
    else:
        sys.stdout.write(format_csv(table, cfg.outputs))


def cmd_eigen(args):
    _emit(eigen_csv(_load(args)), args.out)


def cmd_sweep(args):
    cfg = _load(args)
    try:
        values = tuple(float(v) for v in args.values.split(","))
    except ValueError:
        raise ConfigError(f"bad --values {args.values!r}", key="--values") from None
    result = run_sweep(SweepSpec(cfg, args.axis, values), workers=args.workers)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, table in enumerate(result.tables):
            if table is not None:
                emit_csv(table, outdir / f"table_{i:03d}.csv", cfg.outputs)
        (outdir / "summary.csv").write_bytes(result.summary_csv().encode("utf-8"))
    else:
        sys.stdout.write(result.summary_csv())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="configuration document")
    common.add_argument("--out", help="output path (directory for sweep); default stdout")
    common.add_argument("--kappa2-over-2pi-mhz", dest="kappa2", type=float,
                        help="override the active-cavity rate kappa_2/2pi in MHz")
    common.add_argument("--grid", help="probe grid start:stop:points in delta/omega_b units")

    parser = argparse.ArgumentParser(prog="magnoamp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("steady", parents=[common], help="steady-state branches").set_defaults(
        func=cmd_steady)
    sub.add_parser("spectrum", parents=[common], help="transmission spectrum CSV").set_defaults(
        func=cmd_spectrum)
    sub.add_parser("delay", parents=[common], help="phase and group delay CSV").set_defaults(
        func=cmd_delay)
    sub.add_parser("eigen", parents=[common], help="drift-matrix eigenvalues").set_defaults(
        func=cmd_eigen)
    sw = sub.add_parser("sweep", parents=[common], help="family of spectra over one parameter")
    sw.add_argument("--axis", required=True, help="parameter key, e.g. J_over_2pi_MHz")
    sw.add_argument("--values", required=True, help="comma-separated axis values")
    sw.add_argument("--workers", type=int, default=None)
    sw.set_defaults(func=cmd_sweep)
    pr = sub.add_parser("preset", parents=[common], help="run a figure preset")
    pr.add_argument("name", help=", ".join(PRESETS))
    pr.set_defaults(func=cmd_preset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PoleError, SingularConfigurationError, EmptySolutionError) as exc:
        print(f"numerical singularity: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
