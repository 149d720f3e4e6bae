"""plots --figure <id> --in <csv...> --out <img>"""

import argparse
import sys

from . import __version__
from .render import FigureJob, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="plots", description="Render valim CSV output as figures."
    )
    p.add_argument("--version", action="version", version=f"valim-plots {__version__}")
    p.add_argument("--figure", required=True, help="figure id, e.g. 1a or 3")
    p.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    p.add_argument("--out", required=True, help="output image (.png or .svg)")
    p.add_argument(
        "--color",
        action="append",
        default=[],
        metavar="SERIES=COLOR",
        help="override a series color, e.g. --color vacuous=0.7",
    )
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    style = {}
    for item in args.color:
        series, sep, color = item.partition("=")
        if not sep or not series or not color:
            print(f"error: bad --color {item!r}, want SERIES=COLOR", file=sys.stderr)
            return 2
        style[series] = color
    job = FigureJob(
        figure=args.figure, inputs=tuple(args.inputs), output=args.out, style=style
    )
    try:
        print(render(job))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
