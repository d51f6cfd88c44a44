"""Command-line front door: `graphelim {gen,experiment,report}`.

The CLI adds no computation of its own; every CSV row it writes is
re-derivable by calling the library directly. Exit codes: 0 success,
1 validation error, 2 runtime failure. Set GRAPHELIM_LOG=debug|info|...
to control log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from . import experiment as exp
from .graph import save_graph
from .plotting import write_report_svg
from .pruning import POLICY_NAMES
from .simulate import (
    Region,
    SimConfig,
    Trajectory,
    Visibility,
    config_from_json,
    config_to_json,
    save_log,
    simulate_trajectory,
    worst_case_graph,
    worst_case_log,
)


class _ValidationError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse usage errors are validation errors
        raise _ValidationError(message)


def _add_source_args(p: argparse.ArgumentParser, for_experiment: bool) -> None:
    p.add_argument(
        "--worst-case",
        nargs=2,
        type=int,
        metavar=("NX", "NL"),
        help="worst-case graph/log with NX poses and NL landmarks",
    )
    if for_experiment:
        p.add_argument(
            "--manifest", type=Path, help="simulation manifest written by `gen`"
        )
    p.add_argument("--frames", type=int, default=150, help="simulated frame count")
    p.add_argument("--landmarks", type=int, default=80, help="simulated landmark count")
    p.add_argument("--sim-seed", type=int, default=1, help="simulation RNG seed")
    p.add_argument("--amplitude", type=float, default=5.0)
    p.add_argument("--wavelength", type=float, default=30.0)
    p.add_argument("--step-size", type=float, default=1.0)
    p.add_argument("--range", dest="max_range", type=float, default=120.0)
    p.add_argument("--fov-deg", type=float, default=270.0)
    p.add_argument(
        "--region",
        nargs=4,
        type=float,
        metavar=("XMIN", "XMAX", "YMIN", "YMAX"),
        help="landmark bounding box (default: trajectory strip)",
    )
    p.add_argument("--min-obs", type=int, default=2)
    p.add_argument("--d-x", type=int, default=6, help="pose block dimension")
    p.add_argument("--d-l", type=int, default=3, help="landmark block dimension")


def _sim_config_from_args(args: argparse.Namespace) -> SimConfig:
    region = args.region or [0.0, args.frames * args.step_size, -10.0, 10.0]
    cfg = SimConfig(
        n_frames=args.frames,
        trajectory=Trajectory(args.amplitude, args.wavelength, args.step_size),
        landmark_count=args.landmarks,
        landmark_region=Region(*region),
        visibility=Visibility(args.max_range, math.radians(args.fov_deg)),
        min_obs_to_init=args.min_obs,
        d_x=args.d_x,
        d_l=args.d_l,
        seed=args.sim_seed,
    )
    cfg.validate()
    return cfg


def _build_parser() -> _Parser:
    parser = _Parser(prog="graphelim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a dataset (log + manifest)")
    _add_source_args(gen, for_experiment=False)
    gen.add_argument("--out", type=Path, required=True, help="output directory")

    run = sub.add_parser("experiment", help="run a policy grid, write report.csv")
    _add_source_args(run, for_experiment=True)
    run.add_argument(
        "--policy",
        action="append",
        choices=POLICY_NAMES,
        help="policy to evaluate (repeatable; default: all)",
    )
    run.add_argument(
        "--rate", action="append", type=int, help="pruning rate (repeatable; default 4 6)"
    )
    run.add_argument(
        "--seed", action="append", type=int, help="pruning seed for rand (repeatable)"
    )
    run.add_argument(
        "--ordering",
        choices=sorted(exp.ORDERING_FUNCTIONS),
        default="min_degree",
    )
    run.add_argument(
        "--oracle",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="also run the counting factorization oracle per row",
    )
    run.add_argument("--stride", type=int, default=1, help="frame sampling stride")
    run.add_argument("--out", type=Path, required=True)

    rep = sub.add_parser("report", help="render SVG plot + summary from a CSV")
    rep.add_argument("--csv", type=Path, required=True)
    rep.add_argument("--out", type=Path, required=True)
    return parser


def _cmd_gen(args: argparse.Namespace) -> int:
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    if args.worst_case:
        n_x, n_l = args.worst_case
        graph = worst_case_graph(n_x, n_l, args.d_x, args.d_l)
        save_graph(graph, out / "graph.txt")
        save_log(worst_case_log(n_x, n_l), out / "dataset.log")
        manifest = {
            "worst_case": {"n_x": n_x, "n_l": n_l, "d_x": args.d_x, "d_l": args.d_l}
        }
        (out / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"wrote worst-case dataset ({graph!r}) to {out}")
    else:
        cfg = _sim_config_from_args(args)
        log = simulate_trajectory(cfg)
        save_log(log, out / "dataset.log")
        (out / "manifest.json").write_text(config_to_json(cfg), encoding="utf-8")
        print(
            f"wrote simulated dataset ({len(log.frames)} frames,"
            f" {log.total_observations()} observations) to {out}"
        )
    return 0


def _spec_from_args(args: argparse.Namespace) -> exp.ExperimentSpec:
    sim = None
    worst_case = None
    if args.manifest is not None:
        text = args.manifest.read_text(encoding="utf-8")
        data = json.loads(text)
        if "worst_case" in data:
            worst_case = exp.WorstCaseParams(**data["worst_case"])
        else:
            sim = config_from_json(text)
    elif args.worst_case:
        n_x, n_l = args.worst_case
        worst_case = exp.WorstCaseParams(n_x, n_l, args.d_x, args.d_l)
    else:
        sim = _sim_config_from_args(args)
    spec = exp.ExperimentSpec(
        sim=sim,
        worst_case=worst_case,
        policies=tuple(args.policy) if args.policy else POLICY_NAMES,
        rates=tuple(args.rate) if args.rate else (4, 6),
        seeds=tuple(args.seed) if args.seed else (0,),
        ordering=args.ordering,
        oracle=args.oracle,
        frame_stride=args.stride,
        max_frames=None,
    )
    spec.validate()
    return spec


def _cmd_experiment(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "spec.json").write_text(exp.spec_to_json(spec), encoding="utf-8")
    rows = exp.run_experiment(spec)
    exp.write_report_csv(rows, out / "report.csv")
    print(f"wrote {len(rows)} rows to {out / 'report.csv'}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    rows = exp.read_report_csv(args.csv)
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    write_report_svg(rows, out / "report.svg")
    summaries = exp.summarize(rows)
    (out / "summary.csv").write_text(
        exp.summary_to_csv(summaries), encoding="utf-8", newline="\n"
    )
    print(f"{'policy':>10} {'rate':>4} {'final cost':>14} {'mean oracle mults':>18}")
    for s in summaries:
        mean = "-" if s.mean_oracle_mult is None else f"{s.mean_oracle_mult:14.0f}"
        print(f"{s.policy:>10} {s.rate:>4} {s.final_ec:14.0f} {mean:>18}")
    print(f"wrote {out / 'report.svg'} and {out / 'summary.csv'}")
    return 0


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("GRAPHELIM_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "experiment":
            return _cmd_experiment(args)
        if args.command == "report":
            return _cmd_report(args)
        raise _ValidationError(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - runtime failures exit 2
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
