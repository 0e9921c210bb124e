"""Command-line entry point: ``bdris <subcommand> --config FILE [...]``.

Exit codes: 0 success, 2 configuration error, 3 numerical error,
4 oracle size guard.
"""
import argparse
import os
import sys

from .baselines import SizeGuardError
from .experiments import (ConfigError, ExperimentConfig, format_csv, load_config, parse_config,
                          run_gain_sweep, run_heatmap, run_oracle_check, run_runtime_bench,
                          run_validate_siso, write_csv)
from .linalg import NumericalError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_SIZE = 0, 2, 3, 4

COMMANDS = {
    "gain-sweep": run_gain_sweep,
    "runtime-bench": run_runtime_bench,
    "heatmap": run_heatmap,
    "oracle-check": run_oracle_check,
    "validate-siso": run_validate_siso,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="bdris", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--seed", type=int, help="master seed (overrides the file)")
        p.add_argument("--out", help="output CSV path (default: config output_path or stdout)")
        p.add_argument("--threads", type=int, help="realizations evaluated concurrently")
        p.add_argument("--no-timing", action="store_true",
                       help="write wall-clock columns as 0 so reruns are byte-identical")
    return parser


def _fit_path(out):
    root, ext = os.path.splitext(out)
    return f"{root}_fit{ext or '.csv'}"


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = dict(seed=args.seed, threads=args.threads,
                     timing=False if args.no_timing else None)
    try:
        cfg = load_config(args.config, **overrides) if args.config else parse_config("", **overrides)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or cfg.output_path or None
    try:
        result = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (NumericalError, FloatingPointError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if args.command == "runtime-bench":
        header, rows, fit_header, fit_row = result
        write_csv(header, rows, out)
        if out:
            write_csv(fit_header, [fit_row], _fit_path(out))
        else:
            sys.stdout.write(format_csv(fit_header, [fit_row]))
    else:
        write_csv(*result, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
