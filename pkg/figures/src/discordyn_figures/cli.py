"""Command line front end: discordyn-figures render --id ID --indir D --out F."""

from __future__ import annotations

import argparse
import sys

from .plotspec import FIGURE_IDS
from .render import render_figure
from .schema import FigureInputError

EXIT_OK = 0
EXIT_FAILURE = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discordyn-figures",
        description="Render publication-style correlation plots from trajectory CSVs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure id from its CSV inputs")
    p.add_argument("--id", required=True, choices=FIGURE_IDS, help="figure id")
    p.add_argument("--indir", required=True, help="directory holding the input CSVs")
    p.add_argument("--out", required=True, help="output image path (.png or .svg)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        path = render_figure(args.id, args.indir, args.out)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(path)
    return EXIT_OK


def run() -> None:
    sys.exit(main())
