"""Command-line entry point: `render --figure fig2 --csv in.csv --out out.png`."""

import argparse
import sys

from .render import BUILDERS, FigureSpec, render


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a quantumness figure from a dtqw sweep CSV",
    )
    parser.add_argument("--figure", required=True, choices=sorted(BUILDERS))
    parser.add_argument("--csv", required=True, help="input sweep CSV")
    parser.add_argument("--out", required=True, help="output image (.png or .svg)")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        print(render(FigureSpec(args.figure, args.csv, args.out)))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
