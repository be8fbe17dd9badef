"""Command-line figure renderer for simulator CSV outputs."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, PlotSpec, SchemaError, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="figkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render a results CSV into image files")
    p.add_argument("--csv", required=True, help="input CSV path")
    p.add_argument("--kind", required=True, choices=sorted(KINDS), help="figure kind")
    p.add_argument("--out", required=True, help="output image path (per-group suffix added)")
    p.add_argument("--group", type=int, help="render a single group only")
    p.add_argument("--linear-ber", action="store_true", help="linear instead of log BER axis")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    spec = PlotSpec(
        csv_path=args.csv,
        kind=args.kind,
        out_path=args.out,
        group=args.group,
        log_ber=not args.linear_ber,
    )
    try:
        written = render(spec)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
