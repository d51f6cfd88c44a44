"""Experiment runner: policy grids over incremental graph prefixes.

For every (policy, rate, seed) cell the runner filters the observation
log once, then for each sampled frame prefix builds the pruned graph,
computes the per-variable and clique-tree elimination costs under the
chosen ordering, optionally runs the counting Cholesky oracle, and
appends one CSV row. Prediction overlay rows scale the measured `full`
curve by 1/r^3 (keyframing) and 9/r^2 (decimation). Everything is
sequential and seeded, so a spec reproduces its CSV byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path

from .cliquetree import build_clique_tree, ec_of_clique_tree
from .elimination import ORDERING_FUNCTIONS, elimination_complexity
from .oracle import cholesky_count, synthesize_system
from .pruning import (
    POLICY_NAMES,
    apply_policy,
    predicted_ec_decimate,
    predicted_ec_full,
    predicted_ec_keyframe,
)
from .simulate import (
    ObservationLog,
    SimConfig,
    build_graph,
    config_from_json,
    simulate_trajectory,
    worst_case_log,
)

log = logging.getLogger("graphelim.experiment")

CSV_HEADER = (
    "frame_idx",
    "policy",
    "rate",
    "seed",
    "n_vars",
    "n_factors",
    "ec_block",
    "ec_bt",
    "oracle_mult_count",
    "predicted_ec",
)

_ROW_ORDER = {
    name: i
    for i, name in enumerate(("full", "rand", "tgreedy", "kf", "dec", "pred_kf", "pred_dec"))
}


@dataclass(frozen=True)
class WorstCaseParams:
    n_x: int
    n_l: int
    d_x: int = 6
    d_l: int = 3


@dataclass(frozen=True)
class ExperimentSpec:
    """Fully serializable description of one experiment run."""

    sim: SimConfig | None = None
    worst_case: WorstCaseParams | None = None
    policies: tuple[str, ...] = POLICY_NAMES
    rates: tuple[int, ...] = (4, 6)
    seeds: tuple[int, ...] = (0,)
    ordering: str = "min_degree"
    oracle: bool = False
    frame_stride: int = 1
    max_frames: int | None = None

    def validate(self) -> None:
        if (self.sim is None) == (self.worst_case is None):
            raise ValueError("spec needs exactly one of sim / worst_case")
        if self.sim is not None:
            self.sim.validate()
        unknown = [p for p in self.policies if p not in POLICY_NAMES]
        if unknown:
            raise ValueError(f"unknown policies {unknown}")
        if self.ordering not in ORDERING_FUNCTIONS:
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if any(r < 1 for r in self.rates) or not self.rates:
            raise ValueError("rates must be a nonempty list of integers >= 1")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if self.frame_stride < 1:
            raise ValueError("frame_stride must be >= 1")


def spec_to_json(spec: ExperimentSpec) -> str:
    data = asdict(spec)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def spec_from_json(text: str) -> ExperimentSpec:
    data = json.loads(text)
    sim = None
    if data.get("sim") is not None:
        sim = config_from_json(json.dumps(data["sim"]))
    wc = None
    if data.get("worst_case") is not None:
        wc = WorstCaseParams(**data["worst_case"])
    spec = ExperimentSpec(
        sim=sim,
        worst_case=wc,
        policies=tuple(data.get("policies", POLICY_NAMES)),
        rates=tuple(data.get("rates", (4, 6))),
        seeds=tuple(data.get("seeds", (0,))),
        ordering=data.get("ordering", "min_degree"),
        oracle=bool(data.get("oracle", False)),
        frame_stride=int(data.get("frame_stride", 1)),
        max_frames=data.get("max_frames"),
    )
    spec.validate()
    return spec


@dataclass(frozen=True)
class ReportRow:
    frame_idx: int
    policy: str
    rate: int
    seed: int
    n_vars: int | None
    n_factors: int | None
    ec_block: float
    ec_bt: int | None
    oracle_mult_count: int | None
    predicted_ec: int | None


def _source_log(spec: ExperimentSpec) -> tuple[ObservationLog, int, int, int]:
    if spec.sim is not None:
        cfg = spec.sim
        return simulate_trajectory(cfg), cfg.d_x, cfg.d_l, cfg.min_obs_to_init
    wc = spec.worst_case
    assert wc is not None
    return worst_case_log(wc.n_x, wc.n_l), wc.d_x, wc.d_l, 2


def _cells(spec: ExperimentSpec) -> list[tuple[str, int, int]]:
    cells: list[tuple[str, int, int]] = []
    for policy in POLICY_NAMES:
        if policy not in spec.policies:
            continue
        if policy == "full":
            cells.append(("full", 1, 0))
        elif policy == "rand":
            cells.extend(("rand", r, s) for r in spec.rates for s in spec.seeds)
        else:
            cells.extend((policy, r, 0) for r in spec.rates)
    return cells


def run_experiment(spec: ExperimentSpec) -> list[ReportRow]:
    spec.validate()
    source, d_x, d_l, min_obs = _source_log(spec)
    if spec.max_frames is not None:
        source = source.prefix(spec.max_frames - 1)

    frame_ids = [f.index for f in source.frames]
    sampled = frame_ids[:: spec.frame_stride]
    if frame_ids and frame_ids[-1] not in sampled:
        sampled.append(frame_ids[-1])
    order_fn = ORDERING_FUNCTIONS[spec.ordering]

    # the unpruned prefix drives prediction columns and overlay curves
    full_counts: dict[int, tuple[int, int]] = {}
    full_ec: dict[int, int] = {}
    need_full_curve = "full" in spec.policies
    for t in sampled:
        g = build_graph(source.prefix(t), d_x=d_x, d_l=d_l, min_obs_to_init=min_obs)
        full_counts[t] = (g.n_poses, g.n_landmarks)
        if need_full_curve:
            full_ec[t] = elimination_complexity(g, order_fn(g))

    rows: list[ReportRow] = []
    for policy, rate, seed in _cells(spec):
        log.debug("cell policy=%s rate=%d seed=%d", policy, rate, seed)
        filtered = apply_policy(source, policy, rate, seed).log
        for t in sampled:
            g = build_graph(
                filtered.prefix(t), d_x=d_x, d_l=d_l, min_obs_to_init=min_obs
            )
            if g.n_vars == 0:
                continue
            ordering = order_fn(g)
            ec = (
                full_ec[t]
                if policy == "full" and t in full_ec
                else elimination_complexity(g, ordering)
            )
            ec_bt = ec_of_clique_tree(build_clique_tree(g, ordering))
            oracle_mult = None
            if spec.oracle:
                system = synthesize_system(g, seed=0)
                oracle_mult = cholesky_count(system, ordering).mult_count
            n_x_t, n_l_t = full_counts[t]
            if policy == "full":
                predicted = predicted_ec_full(n_x_t, n_l_t, d_x, d_l)
            elif policy == "kf":
                predicted = predicted_ec_keyframe(n_x_t, n_l_t, d_x, d_l, rate)
            elif policy == "dec":
                predicted = predicted_ec_decimate(n_x_t, n_l_t, d_x, d_l, rate)
            else:
                predicted = None
            rows.append(
                ReportRow(
                    t, policy, rate, seed, g.n_vars, len(g.factors), ec, ec_bt,
                    oracle_mult, predicted,
                )
            )

    # dashed-line overlays: measured full curve scaled by the predicted ratios
    if need_full_curve:
        overlays = []
        if "kf" in spec.policies:
            overlays.append(("pred_kf", lambda ec, r: ec / r**3))
        if "dec" in spec.policies:
            overlays.append(("pred_dec", lambda ec, r: ec * 9.0 / r**2))
        for name, scale in overlays:
            for r in spec.rates:
                for t in sampled:
                    rows.append(
                        ReportRow(
                            t, name, r, 0, None, None, scale(full_ec[t], r),
                            None, None, None,
                        )
                    )

    rows.sort(key=lambda r: (_ROW_ORDER[r.policy], r.rate, r.seed, r.frame_idx))
    return rows


# -- CSV ---------------------------------------------------------------------


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.3f}"
    return str(v)


def rows_to_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [
                _format_value(v)
                for v in (
                    r.frame_idx, r.policy, r.rate, r.seed, r.n_vars, r.n_factors,
                    r.ec_block, r.ec_bt, r.oracle_mult_count, r.predicted_ec,
                )
            ]
        )
    return buf.getvalue()


def write_report_csv(rows: list[ReportRow], path: str | Path) -> None:
    Path(path).write_text(rows_to_csv(rows), encoding="utf-8", newline="\n")


def _parse_opt_int(s: str) -> int | None:
    return int(s) if s else None


def read_report_csv(path: str | Path) -> list[ReportRow]:
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != list(CSV_HEADER):
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(
            ReportRow(
                frame_idx=int(rec[0]),
                policy=rec[1],
                rate=int(rec[2]),
                seed=int(rec[3]),
                n_vars=_parse_opt_int(rec[4]),
                n_factors=_parse_opt_int(rec[5]),
                ec_block=float(rec[6]),
                ec_bt=_parse_opt_int(rec[7]),
                oracle_mult_count=_parse_opt_int(rec[8]),
                predicted_ec=_parse_opt_int(rec[9]),
            )
        )
    return rows


@dataclass(frozen=True)
class PolicySummary:
    policy: str
    rate: int
    final_ec: float
    mean_oracle_mult: float | None


def summarize(rows: list[ReportRow]) -> list[PolicySummary]:
    """Per (policy, rate): final-frame cost and mean oracle count."""
    groups: dict[tuple[str, int], list[ReportRow]] = {}
    for r in rows:
        if r.policy.startswith("pred_"):
            continue
        groups.setdefault((r.policy, r.rate), []).append(r)
    out = []
    for (policy, rate), members in sorted(
        groups.items(), key=lambda kv: (_ROW_ORDER[kv[0][0]], kv[0][1])
    ):
        last = max(f.frame_idx for f in members)
        finals = [f.ec_block for f in members if f.frame_idx == last]
        counts = [f.oracle_mult_count for f in members if f.oracle_mult_count is not None]
        out.append(
            PolicySummary(
                policy,
                rate,
                sum(finals) / len(finals),
                (sum(counts) / len(counts)) if counts else None,
            )
        )
    return out


def summary_to_csv(summaries: list[PolicySummary]) -> str:
    lines = ["policy,rate,final_ec,mean_oracle_mult"]
    for s in summaries:
        mean = "" if s.mean_oracle_mult is None else f"{s.mean_oracle_mult:.3f}"
        lines.append(f"{s.policy},{s.rate},{s.final_ec:.3f},{mean}")
    return "\n".join(lines) + "\n"
