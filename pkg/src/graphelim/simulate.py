"""Landmark-SLAM graph generators and the trajectory simulator.

Two substrates feed the pruning experiments:

* the worst-case landmark-SLAM graph, in which every landmark is observed
  from every pose and consecutive poses are chained by odometry;
* a 2D sinusoidal trajectory with a forward-facing ranged sensor, which
  produces a time-ordered observation log that pruning policies filter.

Graphs carry structure only; ground-truth geometry exists solely inside
the simulator to decide visibility.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from .graph import FactorGraph, Kind, ParseError

DEFAULT_POSE_DIM = 6
DEFAULT_LANDMARK_DIM = 3


@dataclass(frozen=True)
class Trajectory:
    amplitude: float
    wavelength: float
    step: float


@dataclass(frozen=True)
class Region:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def area(self) -> float:
        return max(self.x_max - self.x_min, 0.0) * max(self.y_max - self.y_min, 0.0)


@dataclass(frozen=True)
class Visibility:
    max_range: float
    field_of_view: float  # radians, centered on the heading


@dataclass(frozen=True)
class SimConfig:
    n_frames: int
    trajectory: Trajectory
    landmark_count: int
    landmark_region: Region
    visibility: Visibility
    min_obs_to_init: int = 2
    d_x: int = DEFAULT_POSE_DIM
    d_l: int = DEFAULT_LANDMARK_DIM
    seed: int = 0

    def validate(self) -> None:
        if self.n_frames < 2:
            raise ValueError("n_frames must be >= 2")
        if self.min_obs_to_init < 2:
            raise ValueError("min_obs_to_init must be >= 2")
        if self.landmark_count < 0:
            raise ValueError("landmark_count must be >= 0")
        if self.landmark_region.area() <= 0:
            raise ValueError("landmark_region must have positive area")
        if self.d_x < 1 or self.d_l < 1:
            raise ValueError("variable dims must be >= 1")
        if self.trajectory.step <= 0 or self.trajectory.wavelength <= 0:
            raise ValueError("trajectory step and wavelength must be positive")
        if self.visibility.max_range < 0 or self.visibility.field_of_view < 0:
            raise ValueError("visibility parameters must be nonnegative")


def default_config(
    seed: int = 1, n_frames: int = 150, landmark_count: int = 80
) -> SimConfig:
    """Desk-scale defaults: sinusoid over a strip of uniformly placed landmarks.

    The wide-aperture long-range sensor keeps observation windows long
    relative to the pruning rates, the regime in which the structural
    differences between the policies actually express themselves.
    """
    step = 1.0
    return SimConfig(
        n_frames=n_frames,
        trajectory=Trajectory(amplitude=5.0, wavelength=30.0, step=step),
        landmark_count=landmark_count,
        landmark_region=Region(0.0, n_frames * step, -10.0, 10.0),
        visibility=Visibility(max_range=120.0, field_of_view=1.5 * math.pi),
        seed=seed,
    )


@dataclass(frozen=True)
class Frame:
    """One timestep: the landmarks observed from the pose at `index`.

    Odometry is implicit: consecutive frames of a log are chained, so a
    filtered log with dropped frames composes odometry across the gaps.
    """

    index: int
    observations: tuple[int, ...]


@dataclass(frozen=True)
class ObservationLog:
    frames: tuple[Frame, ...]
    n_landmarks: int

    def first_seen(self) -> dict[int, int]:
        """Frame index of the first observation of each observed landmark."""
        first: dict[int, int] = {}
        for f in self.frames:
            for lm in f.observations:
                first.setdefault(lm, f.index)
        return first

    def total_observations(self) -> int:
        return sum(len(f.observations) for f in self.frames)

    def observations(self) -> list[tuple[int, int]]:
        """All (frame_index, landmark_id) pairs in log order."""
        return [(f.index, lm) for f in self.frames for lm in f.observations]

    def prefix(self, upto_frame: int) -> "ObservationLog":
        """Frames with index <= `upto_frame` (for incremental cost curves)."""
        return ObservationLog(
            tuple(f for f in self.frames if f.index <= upto_frame),
            self.n_landmarks,
        )


# -- generators --------------------------------------------------------------


def worst_case_graph(
    n_x: int,
    n_l: int,
    d_x: int = DEFAULT_POSE_DIM,
    d_l: int = DEFAULT_LANDMARK_DIM,
) -> FactorGraph:
    """Worst-case landmark-SLAM graph: every landmark seen from every pose.

    Poses 0..n_x-1 are chained by odometry; landmarks n_x..n_x+n_l-1 each
    share a binary factor with every pose. No landmark-landmark and no
    non-consecutive pose-pose factors exist.
    """
    if n_x < 1:
        raise ValueError("need at least one pose")
    if n_l < 0:
        raise ValueError("landmark count must be >= 0")
    g = FactorGraph()
    for _ in range(n_x):
        g.add_variable(Kind.POSE, d_x)
    for _ in range(n_l):
        g.add_variable(Kind.LANDMARK, d_l)
    for i in range(n_x - 1):
        g.add_factor((i, i + 1))
    for j in range(n_l):
        for i in range(n_x):
            g.add_factor((i, n_x + j))
    return g


def worst_case_log(n_frames: int, n_landmarks: int) -> ObservationLog:
    """Observation log in which every frame observes every landmark."""
    all_lms = tuple(range(n_landmarks))
    return ObservationLog(
        tuple(Frame(i, all_lms) for i in range(n_frames)), n_landmarks
    )


def simulate_trajectory(config: SimConfig) -> ObservationLog:
    """Drive the sinusoid and record which landmarks each frame can see.

    Landmark positions are sampled uniformly in the configured region with
    a seeded generator, so the log is a pure function of the config. A
    landmark is observed when it lies strictly within `max_range` and
    within half the field of view of the forward-facing heading.
    """
    config.validate()
    rng = np.random.default_rng(config.seed)
    region = config.landmark_region
    landmarks = rng.uniform(
        low=[region.x_min, region.y_min],
        high=[region.x_max, region.y_max],
        size=(config.landmark_count, 2),
    )
    traj = config.trajectory
    omega = 2.0 * math.pi / traj.wavelength
    max_range = config.visibility.max_range
    half_fov = config.visibility.field_of_view / 2.0

    frames = []
    for i in range(config.n_frames):
        px = i * traj.step
        py = traj.amplitude * math.sin(omega * px)
        heading = math.atan2(traj.amplitude * omega * math.cos(omega * px), 1.0)
        visible = []
        for lm_id in range(config.landmark_count):
            dx = landmarks[lm_id, 0] - px
            dy = landmarks[lm_id, 1] - py
            if math.hypot(dx, dy) >= max_range:
                continue
            bearing = math.atan2(dy, dx)
            if abs(math.remainder(bearing - heading, math.tau)) <= half_fov:
                visible.append(lm_id)
        frames.append(Frame(i, tuple(visible)))
    return ObservationLog(tuple(frames), config.landmark_count)


def build_graph(
    log: ObservationLog,
    d_x: int = DEFAULT_POSE_DIM,
    d_l: int = DEFAULT_LANDMARK_DIM,
    min_obs_to_init: int = 2,
) -> FactorGraph:
    """Turn a (possibly filtered) log into a factor graph.

    One pose per retained frame, odometry chaining consecutive retained
    frames, and one landmark variable per landmark with at least
    `min_obs_to_init` retained observations (one binary factor per
    retained observation). Landmarks below the threshold never enter the
    graph.
    """
    g = FactorGraph()
    pose_var: dict[int, int] = {}
    for f in log.frames:
        pose_var[f.index] = g.add_variable(Kind.POSE, d_x)

    counts: dict[int, int] = {}
    for f in log.frames:
        for lm in f.observations:
            counts[lm] = counts.get(lm, 0) + 1
    initialized = sorted(lm for lm, c in counts.items() if c >= min_obs_to_init)
    lm_var = {lm: g.add_variable(Kind.LANDMARK, d_l) for lm in initialized}

    for prev, cur in zip(log.frames, log.frames[1:]):
        g.add_factor((pose_var[prev.index], pose_var[cur.index]))
    for lm in initialized:
        for f in log.frames:
            if lm in f.observations:
                g.add_factor((pose_var[f.index], lm_var[lm]))
    return g


# -- serialization -----------------------------------------------------------
#
# Log format, UTF-8, LF: a `FRAME <idx>` line opens each frame, followed by
# one `OBS <landmark_id>` line per observation. Comments start with '#'.


def log_to_text(log: ObservationLog) -> str:
    lines = []
    for f in log.frames:
        lines.append(f"FRAME {f.index}")
        for lm in f.observations:
            lines.append(f"OBS {lm}")
    return "\n".join(lines) + ("\n" if lines else "")


def save_log(log: ObservationLog, path: str | Path) -> None:
    Path(path).write_text(log_to_text(log), encoding="utf-8", newline="\n")


def log_from_text(
    text: str, source: str = "<string>", n_landmarks: int | None = None
) -> ObservationLog:
    frames: list[Frame] = []
    cur_idx: int | None = None
    cur_obs: list[int] = []
    max_lm = -1

    def flush() -> None:
        if cur_idx is not None:
            frames.append(Frame(cur_idx, tuple(cur_obs)))

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            if fields[0] == "FRAME" and len(fields) == 2:
                flush()
                cur_idx = int(fields[1])
                cur_obs = []
            elif fields[0] == "OBS" and len(fields) == 2:
                if cur_idx is None:
                    raise ValueError("OBS before any FRAME")
                lm = int(fields[1])
                cur_obs.append(lm)
                max_lm = max(max_lm, lm)
            else:
                raise ValueError(f"unknown record {line!r}")
        except ValueError as exc:
            raise ParseError(source, line_no, str(exc)) from None
    flush()
    return ObservationLog(
        tuple(frames), n_landmarks if n_landmarks is not None else max_lm + 1
    )


def load_log(path: str | Path, n_landmarks: int | None = None) -> ObservationLog:
    path = Path(path)
    return log_from_text(
        path.read_text(encoding="utf-8"), source=str(path), n_landmarks=n_landmarks
    )


def config_to_json(config: SimConfig) -> str:
    return json.dumps(asdict(config), indent=2, sort_keys=True) + "\n"


def config_from_json(text: str) -> SimConfig:
    data = json.loads(text)
    try:
        cfg = SimConfig(
            n_frames=int(data["n_frames"]),
            trajectory=Trajectory(**data["trajectory"]),
            landmark_count=int(data["landmark_count"]),
            landmark_region=Region(**data["landmark_region"]),
            visibility=Visibility(**data["visibility"]),
            min_obs_to_init=int(data.get("min_obs_to_init", 2)),
            d_x=int(data.get("d_x", DEFAULT_POSE_DIM)),
            d_l=int(data.get("d_l", DEFAULT_LANDMARK_DIM)),
            seed=int(data.get("seed", 0)),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"invalid simulation config: {exc}") from None
    cfg.validate()
    return cfg


def with_seed(config: SimConfig, seed: int) -> SimConfig:
    return replace(config, seed=seed)
