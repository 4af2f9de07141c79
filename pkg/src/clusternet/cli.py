"""Command-line interface.

Subcommands:

* ``generate`` — write one network realization as an edge-list file.
* ``run``      — run an ensemble experiment (from a JSON config or flags)
                 into an output directory.
* ``report``   — print the moment table of a finished run.

Exit codes: 0 success; 2 invalid parameters or config; 3 missing input
file/directory; 4 numerical failure (degenerate state, capacity, internal
consistency).  All randomness flows from the seed arguments — reruns of the
same config produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graphgen, runio
from .ensemble import ExperimentSpec, SubtractionPlan, run_experiment
from .errors import (
    CapacityError,
    ClusternetError,
    DegenerateSubtractionError,
    DegenerateVarianceError,
    InternalConsistencyError,
    ParameterError,
    ValidationError,
)
from .graphgen import ModelSpec

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISSING = 3
EXIT_NUMERICAL = 4


def _model_from_flags(args) -> ModelSpec:
    if args.model is None:
        raise ParameterError("--model is required (or provide --config)")
    if args.n is None:
        raise ParameterError("--n is required (or provide --config)")
    return ModelSpec(kind=args.model, n=args.n, seed=getattr(args, "seed", 0) or 0,
                     m=args.m, k=args.k, p=args.p)


def parse_subtraction(text: str) -> SubtractionPlan:
    """Parse ``none``, ``hub:<photons>`` or ``random:<photons>``."""
    if text == "none":
        return SubtractionPlan()
    head, sep, tail = text.partition(":")
    if head in ("hub", "random") and sep:
        try:
            photons = int(tail)
        except ValueError:
            raise ParameterError(f"bad photon count in --subtract {text!r}") from None
        return SubtractionPlan(kind=head, photons=photons)
    raise ParameterError(f"--subtract must be none, hub:<n> or random:<n>, got {text!r}")


def _cmd_generate(args) -> int:
    spec = _model_from_flags(args)
    net = graphgen.generate(spec)
    graphgen.write_edgelist(net, args.out)
    print(f"wrote {args.out}: n={net.n}, edges={len(net.edges())}")
    return EXIT_OK


def _cmd_run(args) -> int:
    workers = None
    out_dir = None
    if args.config is not None:
        spec, workers, out_dir = runio.load_config(args.config)
    else:
        spec = ExperimentSpec(
            model=_model_from_flags(args),
            squeezing_db=args.squeezing_db,
            subtraction=parse_subtraction(args.subtract),
            realizations=args.realizations,
            master_seed=args.seed,
            exact_mode=args.exact,
            clustering_convention=args.clustering,
        )
    if args.workers is not None:
        workers = args.workers
    if args.out is not None:
        out_dir = args.out
    if out_dir is None:
        raise ParameterError("no output directory: pass --out or set out_dir in the config")
    if workers is None:
        workers = 1

    report = run_experiment(spec, workers=workers)
    out = runio.write_run(report, out_dir)
    done = spec.realizations - len(report.skipped)
    print(f"run complete: {done}/{spec.realizations} realizations -> {out}")
    if report.skipped:
        print(f"skipped {len(report.skipped)} realizations "
              f"(indices {[idx for idx, _ in report.skipped]})")
    return EXIT_OK


def _fmt_cell(value: float | None, se: float | None) -> str:
    if value is None:
        return "undefined"
    text = f"{value:.6g}"
    if se is not None:
        text += f" ± {se:.2g}"
    return text


def _cmd_report(args) -> int:
    manifest = runio.read_manifest(args.run_dir)
    moments = runio.read_moments(args.run_dir)
    model = manifest["model"]
    print(f"run: model={model['kind']} n={model['n']} "
          f"squeezing={manifest['squeezing_db']} dB "
          f"subtraction={manifest['subtraction']['kind']}:{manifest['subtraction']['photons']} "
          f"realizations={manifest['realizations']} seed={manifest['master_seed']}")
    skipped = manifest.get("skipped_realizations", [])
    if skipped:
        print(f"skipped realizations: {len(skipped)} of {manifest['realizations']} "
              f"(indices {[s['index'] for s in skipped]})")
    header = f"{'group':>8} {'state':>10} {'measure':>10} {'mean':>24} {'variance':>24} {'skewness':>24} {'kurtosis':>24} {'count':>7}"
    print(header)
    for group, states in moments["groups"].items():
        for state, measures in states.items():
            for measure, cell in measures.items():
                print(f"{group:>8} {state:>10} {measure:>10} "
                      f"{_fmt_cell(cell['mean'], cell['mean_se']):>24} "
                      f"{_fmt_cell(cell['variance'], cell['variance_se']):>24} "
                      f"{_fmt_cell(cell['skewness'], cell['skewness_se']):>24} "
                      f"{_fmt_cell(cell['kurtosis'], cell['kurtosis_se']):>24} "
                      f"{cell['count']:>7}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusternet",
        description="Emergent photon-number correlation networks of photon-subtracted "
                    "cluster states on complex graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate one network as an edge list")
    _add_model_flags(gen)
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument("--out", required=True, help="output edge-list path")
    gen.set_defaults(func=_cmd_generate)

    run = sub.add_parser("run", help="run an ensemble experiment")
    run.add_argument("--config", help="JSON config path (alternative to flags)")
    _add_model_flags(run)
    run.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    run.add_argument("--squeezing-db", type=float, default=15.0,
                     help="input squeezing in dB (default 15)")
    run.add_argument("--subtract", default="none",
                     help="none | hub:<photons> | random:<photons> (default none)")
    run.add_argument("--realizations", type=int, default=1)
    run.add_argument("--exact", action="store_true",
                     help="disable the locality shortcut (full Wick evaluation)")
    run.add_argument("--clustering", choices=("paper", "strict"), default="paper",
                     help="weighted-clustering denominator convention")
    run.add_argument("--workers", type=int, default=None,
                     help="parallel realization workers (default 1)")
    run.add_argument("--out", default=None, help="output run directory")
    run.set_defaults(func=_cmd_run)

    rep = sub.add_parser("report", help="print the moment table of a run")
    rep.add_argument("run_dir", help="run directory written by `clusternet run`")
    rep.set_defaults(func=_cmd_report)
    return parser


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=graphgen.MODEL_KINDS, default=None)
    parser.add_argument("--n", type=int, default=None, help="node count")
    parser.add_argument("--m", type=int, default=None, help="ba: edges per new node")
    parser.add_argument("--k", type=int, default=None, help="ws: neighbors per side")
    parser.add_argument("--p", type=float, default=None, help="ws rewiring / er edge probability")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, ValidationError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except (DegenerateSubtractionError, DegenerateVarianceError,
            InternalConsistencyError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ClusternetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
