"""Spectral density panels from dft-line sweep files (one or two, side by side)."""

import argparse
import sys

from .render import FigureSpec, add_common_flags, render
from .schema import SchemaError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Render DFT magnitude density vs h2 from dft-line sweep files; "
                    "pass two files (e.g. mean-field and quantum) for side-by-side panels."
    )
    parser.add_argument("inputs", nargs="+", help="dft-line sweep file(s) (columns h1,h2,observable,freq,magnitude)")
    parser.add_argument("--observable", default="", help="observable column to plot (default: first present)")
    add_common_flags(parser, "dft-density")
    args = parser.parse_args(argv)
    try:
        out = render(FigureSpec(inputs=args.inputs, kind="dft-density", out=args.out, scale=args.scale,
                                xlabel=args.xlabel, ylabel=args.ylabel, title=args.title,
                                observable=args.observable, dpi=args.dpi))
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
