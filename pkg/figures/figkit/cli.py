"""Shared command-line scaffolding for the figure scripts."""

from __future__ import annotations

import argparse
import sys

from .runio import RunData, SchemaError, load_run


def build_parser(description: str, scale: bool = False, measure: bool = False) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--run", action="append", required=True, metavar="DIR",
                        help="run directory (repeatable)")
    parser.add_argument("--out", required=True,
                        help="output image path; .png and .svg are written")
    if scale:
        parser.add_argument("--scale", choices=("linear", "loglog"), default="linear",
                            help="axis scale (loglog drops non-positive samples)")
    if measure:
        parser.add_argument("--measure", choices=("degree", "clustering"), default="degree")
    return parser


def run_script(render, description: str, argv=None, scale: bool = False,
               measure: bool = False) -> int:
    """Parse arguments, load runs, render; map errors to exit codes."""
    args = build_parser(description, scale=scale, measure=measure).parse_args(argv)
    try:
        runs: list[RunData] = [load_run(path) for path in args.run]
        render(runs, args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0
