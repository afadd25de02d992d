"""memshield-figures {stats,attack,sir}: one command per figure."""

from __future__ import annotations

import argparse
import sys

from .render import (
    FigureSpec,
    render_attack_figure,
    render_sir_figure,
    render_stats_figure,
)

RENDERERS = {
    "stats": render_stats_figure,
    "attack": render_attack_figure,
    "sir": render_sir_figure,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="memshield-figures",
        description="Render experiment figures from memshield CSV outputs.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{stats,attack,sir}")
    for name, doc in (
        ("stats", "2x2 log-log panels of the four cover distributions"),
        ("attack", "lcc decay per strategy with replicate envelopes"),
        ("sir", "I/S/R time evolution comparing labeled runs"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--input-dir", required=True, help="completed experiment directory")
        p.add_argument("--out", required=True, help="output image path (.png or .svg)")
        if name == "stats":
            p.add_argument(
                "--linear",
                action="store_true",
                help="plot distribution panels on linear instead of log-log axes",
            )
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        spec = FigureSpec(
            input_dir=args.input_dir,
            output_path=args.out,
            loglog=not getattr(args, "linear", False),
        )
        RENDERERS[args.command](spec)
    except (OSError, ValueError) as exc:
        print(f"memshield-figures: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
