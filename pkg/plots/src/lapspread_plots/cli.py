"""Render command: one dataset directory in, one PNG out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .render import PlotSpec, render


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lapspread-render",
        description="render a lapspread figure dataset (manifest + CSVs) to PNG")
    parser.add_argument("--figure", type=int, required=True, choices=(1, 3, 5, 9))
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory holding manifest.json and its CSVs")
    parser.add_argument("--out", required=True, help="output PNG path")
    args = parser.parse_args(argv)
    try:
        out = render(PlotSpec(figure_id=args.figure,
                              manifest_dir=Path(args.in_dir),
                              output_path=Path(args.out)))
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
