"""(h1, h2) heatmap from a decorrelator-map or fotoc-map sweep file."""

import argparse
import sys

from .render import FigureSpec, add_common_flags, render
from .schema import SchemaError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Render a drive-amplitude phase map from a decorrelator-map or fotoc-map sweep file."
    )
    parser.add_argument("input", help="map sweep file (columns h1,h2,D_avg or h1,h2,F_avg)")
    add_common_flags(parser, "heatmap")
    args = parser.parse_args(argv)
    try:
        out = render(FigureSpec(inputs=[args.input], kind="heatmap", out=args.out, scale=args.scale,
                                xlabel=args.xlabel, ylabel=args.ylabel, title=args.title, dpi=args.dpi))
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
