"""Command-line front end.

Subcommands:
  rates     tabulate the decay rates on the output grid
  evolve    propagate the initial state and emit the trajectory
  measure   evolve, sample the divisibility witness, and report the measure
  sweep     repeat `measure` over one swept parameter, one row per value
  validate  run the built-in oracle checks (no configuration needed)

Exit codes: 0 success, 1 configuration error, 2 numeric failure,
3 validation failure.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from . import report as rep
from . import validate as val
from .config import load_config, with_sweep_value
from .errors import ConfigError, SpinDivError
from .pipeline import grid_table, run_evolve, run_measure

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_VALIDATION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _build_parser():
    parser = _Parser(prog="spindiv", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_cfg in (("rates", True), ("evolve", True), ("measure", True),
                            ("sweep", True), ("validate", False)):
        p = sub.add_parser(name)
        if needs_cfg:
            p.add_argument("--config", required=True, help="path to the JSON run configuration")
            p.add_argument("--out", default=None, help="output file (overrides output.path)")
            p.add_argument("--threads", type=int, default=None,
                           help="worker threads for sweeps (overrides the config key)")
    return parser


def _resolve_out(cfg, args, command):
    if args.out:
        return args.out
    if cfg.output_path:
        return cfg.output_path
    ext = cfg.output_format
    return f"spindiv_{command}.{ext}"


def _cmd_rates(cfg, out_path):
    if cfg.output_format != "csv":
        raise ConfigError("output.format", "the rates subcommand emits csv only")
    table = grid_table(cfg)
    rep.rates_csv(out_path, table)
    print(f"rates: {table.times.size} times, q in [{table.q_values[0]}, {table.q_values[-1]}]"
          f" -> {out_path}")


def _cmd_evolve(cfg, out_path):
    run = run_evolve(cfg)
    traj = run.trajectory
    if cfg.output_format == "csv":
        rep.trajectory_csv(out_path, traj, run.model.d)
    else:
        bundle = rep.ReportBundle(
            config=cfg.raw,
            trajectory_summary=rep.trajectory_summary(traj, run.model.d),
            divisibility=None,
            warnings=rep.run_warnings(traj=traj),
        )
        rep.bundle_json(out_path, bundle)
    print(f"evolve: {traj.times.size} points, min eigenvalue {traj.min_eigenvalue.min():.3e},"
          f" max trace error {traj.trace_error.max():.3e} -> {out_path}")


def _measure_bundle(cfg, run):
    return rep.ReportBundle(
        config=cfg.raw,
        trajectory_summary=rep.trajectory_summary(run.trajectory, run.model.d),
        divisibility=rep.divisibility_dict(run.report),
        warnings=rep.run_warnings(traj=run.trajectory, report=run.report),
    )


def _cmd_measure(cfg, out_path):
    run = run_measure(cfg)
    if cfg.output_format == "csv":
        rep.measure_csv(out_path, run.trajectory.times, run.g_samples, run.table)
    else:
        rep.bundle_json(out_path, _measure_bundle(cfg, run))
    r = run.report
    print(f"measure: I = {r.integral:.6g}, N_RHP = {r.n_rhp:.6g},"
          f" min rate seen {r.min_rate_seen:.3e},"
          f" truncated tail: {'yes' if r.truncation_flag else 'no'} -> {out_path}")


def _cmd_sweep(cfg, out_path, threads):
    if cfg.sweep_parameter is None:
        raise ConfigError("sweep", "the sweep subcommand needs a sweep section")
    if cfg.output_format != "csv":
        raise ConfigError("output.format", "the sweep subcommand emits csv only")
    configs = [with_sweep_value(cfg, cfg.sweep_parameter, v) for v in cfg.sweep_values]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(run_measure, configs))
    else:
        runs = [run_measure(c) for c in configs]
    reports = [r.report for r in runs]
    rep.sweep_csv(out_path, cfg.sweep_parameter, cfg.sweep_values, reports)
    for v, r in zip(cfg.sweep_values, reports):
        print(f"sweep {cfg.sweep_parameter} = {v:g}: N_RHP = {r.n_rhp:.6g}")
    print(f"sweep: {len(reports)} rows -> {out_path}")


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "validate":
        failures = val.run_all()
        if failures:
            print(f"validate: {failures} check(s) failed", file=sys.stderr)
            return EXIT_VALIDATION
        print("validate: all checks passed")
        return EXIT_OK
    try:
        cfg = load_config(args.config)
        out_path = _resolve_out(cfg, args, args.command)
        if args.command == "rates":
            _cmd_rates(cfg, out_path)
        elif args.command == "evolve":
            _cmd_evolve(cfg, out_path)
        elif args.command == "measure":
            _cmd_measure(cfg, out_path)
        elif args.command == "sweep":
            threads = args.threads if args.threads is not None else cfg.threads
            if threads < 1:
                raise ConfigError("threads", "must be >= 1")
            _cmd_sweep(cfg, out_path, threads)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SpinDivError as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
