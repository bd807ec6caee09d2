"""Command-line front end.

    ticknoise <command> [flags]         commands: simulate acf spectrum kdelta
                                        noise epps validate
    ticknoise --figure ID [flags]       figure CSV reproduction

Flags may come from a config file (--config PATH, `key = value` lines) with
command-line values winning.  CSV output: header line, 17 significant
digits, '.' decimal point, Unix line endings.  Exit codes: 0 success,
2 bad configuration or arguments, 3 numerical failure, 4 insufficient data.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

import numpy as np

from . import backend
from .arfima import truncation_tail
from .config import RunConfig, build_config, parse_config_file
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateModelError,
    DomainError,
    InsufficientDataError,
    TickNoiseError,
    TruncationError,
)
from .figures import run_figure
from .montecarlo import empirical_acf, simulate_stream
from .spectral import (
    epps_curve,
    noise_strength,
    noise_strength_delta,
    spectrum_table,
    window_acf_curve,
)
from .validation import run_validation

_COMMANDS = ("simulate", "acf", "spectrum", "kdelta", "noise", "epps", "validate")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_DATA = 4


def _fmt(x: float) -> str:
    return f"{x:.17g}"


@contextmanager
def _open_out(path: str):
    if path == "-" or path == "":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def write_csv(path: str, header, columns) -> None:
    columns = [np.asarray(c, dtype=float) for c in columns]
    n = len(columns[0])
    if any(len(c) != n for c in columns):
        raise DomainError("CSV columns must share one length")
    with _open_out(path) as fh:
        fh.write(",".join(header) + "\n")
        for i in range(n):
            fh.write(",".join(_fmt(c[i]) for c in columns) + "\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="key = value config file")
    parser.add_argument("--out", default=None, help="output path, '-' for stdout")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--d", type=float, default=None)
    parser.add_argument("--q", type=float, default=None)
    parser.add_argument("--mu", type=float, default=None)
    parser.add_argument("--b", type=float, default=None)
    parser.add_argument("--dist", choices=("exponential", "weibull", "ggd"), default=None)
    parser.add_argument("--vartheta", type=float, default=None)
    parser.add_argument("--beta", type=float, default=None)
    parser.add_argument("--lambda", dest="lam", type=float, default=None)
    parser.add_argument("--delta-grid", dest="delta_grid", default=None,
                        help="comma-separated window lengths")
    parser.add_argument("--T", dest="horizon", type=float, default=None)
    parser.add_argument("--seeds", dest="n_seeds", type=int, default=None)
    parser.add_argument("--trunc", type=int, default=None)
    parser.add_argument("--tail-tol", dest="tail_tol", type=float, default=None)
    parser.add_argument("--omega-max", dest="omega_max", type=float, default=None)
    parser.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    parser.add_argument("--delta", type=float, default=None)
    parser.add_argument("--max-lag", dest="max_lag", type=int, default=None)
    parser.add_argument("--mode", choices=("tick", "calendar"), default="tick")
    parser.add_argument("--tau-max", dest="tau_max", type=float, default=None)
    parser.add_argument("--tau-points", dest="tau_points", type=int, default=None)
    parser.add_argument("--omega-plot-max", dest="omega_plot_max", type=float, default=None)
    parser.add_argument("--omega-points", dest="omega_points", type=int, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ticknoise", add_help=True,
                                     description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--figure", default=None, help="figure id (1..12, 15, A1..A4)")
    sub = parser.add_subparsers(dest="command")
    _add_common(parser)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        _add_common(p)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values = parse_config_file(args.config) if args.config else {}
    overrides = {}
    for key in ("alpha", "d", "q", "mu", "b", "dist", "vartheta", "beta", "lam",
                "horizon", "seed", "n_seeds", "threads", "trunc", "tail_tol",
                "omega_max", "rel_tol", "delta", "max_lag", "tau_max", "tau_points",
                "omega_plot_max", "omega_points", "out"):
        overrides[key] = getattr(args, key, None)
    if getattr(args, "delta_grid", None):
        try:
            overrides["delta_grid"] = tuple(
                float(v) for v in str(args.delta_grid).replace(",", " ").split())
        except ValueError as exc:
            raise ConfigError(f"bad --delta-grid: {args.delta_grid!r}") from exc
    if overrides.get("alpha") is not None and overrides.get("d") is not None:
        raise ConfigError("give only one of --alpha / --d")
    return build_config(file_values, overrides)


def _cmd_simulate(cfg: RunConfig) -> int:
    p = cfg.model_params()
    tail = truncation_tail(p.arfima.d, p.arfima.trunc)
    print(f"ma truncation tail energy: {tail:.3e} (trunc={p.arfima.trunc})", file=sys.stderr)
    stream = simulate_stream(p, cfg.intertrade_dist(), cfg.horizon, cfg.seed)
    write_csv(cfg.out, ["t", "r"], [stream.times, stream.returns])
    return EXIT_OK


def _cmd_acf(cfg: RunConfig, mode: str) -> int:
    p = cfg.model_params()
    if mode == "tick":
        from .tick_model import simulate_ticks

        series = simulate_ticks(p, int(cfg.horizon), cfg.seed)
        curve = empirical_acf(series, cfg.max_lag, "tick")
        write_csv(cfg.out, ["lag", "acov"], [curve.x, curve.y])
    else:
        stream = simulate_stream(p, cfg.intertrade_dist(), cfg.horizon, cfg.seed)
        curve = empirical_acf(stream, cfg.max_lag, "calendar", delta=cfg.delta)
        write_csv(cfg.out, ["tau", "acov"], [curve.x, curve.y])
    return EXIT_OK


def _cmd_spectrum(cfg: RunConfig) -> int:
    p = cfg.model_params()
    table = spectrum_table(p, cfg.intertrade_dist(), cfg.qspec())
    omega = np.linspace(0.0, cfg.omega_plot_max, cfg.omega_points)
    write_csv(cfg.out, ["omega", "excess_spectrum"], [omega, table(omega)])
    return EXIT_OK


def _cmd_kdelta(cfg: RunConfig) -> int:
    p = cfg.model_params()
    taus = np.linspace(0.0, cfg.tau_max, cfg.tau_points)
    curve = window_acf_curve(p, cfg.intertrade_dist(), cfg.delta, taus, cfg.qspec())
    write_csv(cfg.out, ["tau", "window_acov"], [curve.x, curve.y])
    return EXIT_OK


def _cmd_noise(cfg: RunConfig) -> int:
    p = cfg.model_params()
    dist = cfg.intertrade_dist()
    strength = noise_strength(p, cfg.qspec())
    deltas = np.asarray(cfg.delta_grid, dtype=float)
    vals = [noise_strength_delta(p, dist, float(d), cfg.qspec()) for d in deltas]
    scalar_stream = sys.stderr if cfg.out in ("-", "") else sys.stdout
    print(f"S {strength:.17g}", file=scalar_stream)
    write_csv(cfg.out, ["delta", "S_delta"], [deltas, np.array(vals)])
    return EXIT_OK


def _cmd_epps(cfg: RunConfig) -> int:
    p = cfg.model_params()
    curve = epps_curve(p, cfg.intertrade_dist(), cfg.kernel(),
                       np.asarray(cfg.delta_grid, dtype=float), cfg.qspec())
    write_csv(cfg.out, ["delta", "S12"], [curve.x, curve.y])
    return EXIT_OK


def _cmd_validate(cfg: RunConfig) -> int:
    checks = run_validation(cfg)
    report = {"all_pass": all(c["pass"] for c in checks), "checks": checks}
    with _open_out(cfg.out if cfg.out != "-" else "-") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    for c in checks:
        status = "PASS" if c["pass"] else "FAIL"
        print(f"{status} {c['check_name']}: |{c['actual']:.6g} - {c['target']:.6g}| "
              f"<= {c['tolerance']:.2g}", file=sys.stderr)
    return EXIT_OK if report["all_pass"] else 1


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    try:
        cfg = _config_from_args(args)
        if args.threads:
            backend.set_threads(args.threads)
        if args.command is None:
            if not args.figure:
                parser.print_usage(sys.stderr)
                print("error: need a command or --figure ID", file=sys.stderr)
                return EXIT_CONFIG
            header, cols = run_figure(args.figure, cfg)
            write_csv(cfg.out, header, cols)
            return EXIT_OK
        if args.figure:
            raise ConfigError("--figure cannot be combined with a command")
        if args.command == "simulate":
            return _cmd_simulate(cfg)
        if args.command == "acf":
            return _cmd_acf(cfg, args.mode)
        if args.command == "spectrum":
            return _cmd_spectrum(cfg)
        if args.command == "kdelta":
            return _cmd_kdelta(cfg)
        if args.command == "noise":
            return _cmd_noise(cfg)
        if args.command == "epps":
            return _cmd_epps(cfg)
        if args.command == "validate":
            return _cmd_validate(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InsufficientDataError as exc:
        print(f"error: insufficient data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConvergenceError, DomainError, DegenerateModelError, TruncationError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except TickNoiseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
