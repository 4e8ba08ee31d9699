"""Overlaid decorrelator/FOTOC curves from a uniform-scan sweep file."""

import argparse
import sys

from .render import FigureSpec, add_common_flags, render
from .schema import SchemaError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot the two time-averaged stability diagnostics against the uniform drive amplitude h."
    )
    parser.add_argument("input", help="uniform-scan sweep file (columns h,D_avg,F_avg)")
    add_common_flags(parser, "curves")
    args = parser.parse_args(argv)
    try:
        out = render(FigureSpec(inputs=[args.input], kind="curves", out=args.out, scale=args.scale,
                                xlabel=args.xlabel, ylabel=args.ylabel, title=args.title, dpi=args.dpi))
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
