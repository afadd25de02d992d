"""Command-line entry point: memshield {stats,attack,sir,all} --config FILE."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cover import CommunityFileError
from .experiment import (
    ConfigError,
    load_config,
    run_all,
    run_attack,
    run_sir_compare,
    run_stats,
)
from .graph import EdgeListParseError

COMMANDS = ("stats", "attack", "sir", "all")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="memshield",
        description="Membership-based immunization experiments on networks "
        "with overlapping ground-truth communities.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{stats,attack,sir,all}")
    for name, doc in (
        ("stats", "write cover statistics CSVs and a scalar summary"),
        ("attack", "trace lcc decay over the immunized-fraction grid"),
        ("sir", "compare SIR ensembles with and without immunization"),
        ("all", "run stats, attack, and sir in one pass"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", required=True, help="YAML experiment config")
        p.add_argument("--out", help="override the configured output directory")
        p.add_argument("--seed", type=int, help="replace every seed list with this single seed")
        p.add_argument(
            "--g-grid",
            help="override the attack g grid, comma-separated fractions (e.g. 0.1,0.2,0.3)",
        )
    return parser


def _apply_overrides(config, args) -> None:
    if args.out:
        config.output_dir = Path(args.out)
    if args.seed is not None:
        config.attack.seeds = [args.seed]
        config.sir.seeds = [args.seed]
        config.sir.strategy_seed = args.seed
    if args.g_grid:
        try:
            config.attack.g_grid = [float(tok) for tok in args.g_grid.split(",") if tok]
        except ValueError:
            raise ConfigError(f"--g-grid is not a comma-separated float list: {args.g_grid!r}")
    config.validate()


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        config = load_config(args.config)
        _apply_overrides(config, args)
        runner = {
            "stats": run_stats,
            "attack": run_attack,
            "sir": run_sir_compare,
            "all": run_all,
        }[args.command]
        runner(config)
    except (ConfigError, EdgeListParseError, CommunityFileError, OSError, ValueError) as exc:
        print(f"memshield: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
