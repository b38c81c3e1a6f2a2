"""Target-acquisition task: random target sets, trials, and the three-group
experiment runner.

Group naming follows the study layout this laboratory reproduces: a
"control" group on a direct low-latency pointing device and two glove
tunings, "iteration1" (low sensitivity, wide dead zone) and "iteration2"
(high sensitivity, narrow dead zone). The statistical unit downstream is
the trial total, 8 participants x 4 trials = 32 observations per group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from .operator_model import OperatorParams, PipelineContext, acquire_target
from .transfer import CursorState, Screen, TransferParams, preset

__all__ = [
    "GROUPS",
    "TaskConfig",
    "TargetResult",
    "TrialRecord",
    "SessionRecord",
    "CONTROL_DEVICE",
    "default_devices",
    "default_learning_schedule",
    "generate_targets",
    "run_trial",
    "run_experiment",
]

GROUPS = ("control", "iteration1", "iteration2")

# the physical control device is a touchpad-class pointer; simulated here as
# a direct high-gain device with no dead zone (numbers are calibration
# choices, not published values)
CONTROL_DEVICE = TransferParams(150.0, 0.0, 0.0, 3000.0, preset_name="control")

# sub-stream tag for target placement; documented so that target sequences
# are reproducible from (seed, trial_index) alone
TARGET_STREAM = 2001
OPERATOR_STREAM = 3001


@dataclass(frozen=True)
class TaskConfig:
    screen: Screen = Screen()
    targets_per_trial: int = 4
    trials_per_participant: int = 4
    target_radius: float = 24.0
    dwell: float = 0.5
    min_target_spacing: float = 100.0
    seed: int = 0
    timeout: float = 60.0
    sample_rate: float = 100.0

    def __post_init__(self) -> None:
        if self.targets_per_trial < 1:
            raise ValueError("targets_per_trial must be at least 1")
        if self.trials_per_participant < 1:
            raise ValueError("trials_per_participant must be at least 1")
        if self.target_radius < 1:
            raise ValueError("target_radius must be at least 1 pixel")
        if self.dwell <= 0:
            raise ValueError("dwell must be positive")
        if self.min_target_spacing < 0:
            raise ValueError("min_target_spacing must be non-negative")
        if self.timeout <= self.dwell:
            raise ValueError("timeout must exceed dwell")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")


@dataclass(frozen=True)
class TargetResult:
    """One presented target and how the acquisition went."""

    x: float
    y: float
    movement_time: float
    timed_out: bool


@dataclass(frozen=True)
class TrialRecord:
    participant_id: int
    trial_index: int
    targets: tuple[TargetResult, ...]
    trial_total: float

    def __post_init__(self) -> None:
        if self.trial_index < 1:
            raise ValueError("trial_index starts at 1")
        if not self.targets:
            raise ValueError("trial must contain at least one target")
        total = math.fsum(t.movement_time for t in self.targets)
        if abs(total - self.trial_total) > 1e-9:
            raise ValueError(
                f"trial_total {self.trial_total} != sum of movement times {total}"
            )


@dataclass(frozen=True)
class SessionRecord:
    """All trials of one participant on one device."""

    session_id: str
    group: str
    source: str
    participant_id: int
    trials: tuple[TrialRecord, ...]
    config: TaskConfig

    def __post_init__(self) -> None:
        if self.group not in GROUPS:
            raise ValueError(f"group must be one of {GROUPS}, got {self.group!r}")
        if self.source not in ("simulated", "live"):
            raise ValueError(f"source must be simulated or live, got {self.source!r}")
        if not self.trials:
            raise ValueError("session must contain at least one trial")


def default_devices() -> dict[str, TransferParams]:
    return {
        "control": CONTROL_DEVICE,
        "iteration1": preset("iteration1"),
        "iteration2": preset("iteration2"),
    }


def default_learning_schedule(trial_index: int) -> float:
    """Practice effect: noise and latency shrink over trials, floored at 0.6."""
    return max(0.6, 1.0 - 0.1 * (trial_index - 1))


def generate_targets(cfg: TaskConfig, trial_index: int) -> list[tuple[float, float]]:
    """Uniformly random in-bounds target centers with pairwise spacing.

    Deterministic for (cfg.seed, trial_index): the stream is
    default_rng([seed, TARGET_STREAM, trial_index]), independent of any other
    randomness in a run. Rejection sampling gives up after 10,000 attempts.
    """
    if trial_index < 1:
        raise ValueError("trial_index starts at 1")
    r = cfg.target_radius
    lo_x, hi_x = r, cfg.screen.width - 1 - r
    lo_y, hi_y = r, cfg.screen.height - 1 - r
    if lo_x > hi_x or lo_y > hi_y:
        raise ValueError(
            f"screen {cfg.screen.width}x{cfg.screen.height} cannot fit a "
            f"radius-{r} target"
        )
    rng = np.random.default_rng([cfg.seed, TARGET_STREAM, trial_index])
    spacing2 = cfg.min_target_spacing**2
    out: list[tuple[float, float]] = []
    attempts = 0
    while len(out) < cfg.targets_per_trial:
        attempts += 1
        if attempts > 10_000:
            raise ValueError(
                f"could not place {cfg.targets_per_trial} targets with spacing "
                f"{cfg.min_target_spacing} after 10000 attempts"
            )
        x = float(rng.uniform(lo_x, hi_x))
        y = float(rng.uniform(lo_y, hi_y))
        if all((x - ox) ** 2 + (y - oy) ** 2 >= spacing2 for ox, oy in out):
            out.append((x, y))
    return out


def run_trial(
    cfg: TaskConfig,
    device: TransferParams,
    operator: OperatorParams,
    trial_index: int,
    participant_id: int = 0,
    start: CursorState | None = None,
    rng: np.random.Generator | None = None,
) -> TrialRecord:
    """Present one trial's targets in order; the cursor carries over between
    targets (and stays put after a timeout). Each target's clock starts at
    its presentation."""
    targets = generate_targets(cfg, trial_index)
    cursor = start or CursorState(
        x=(cfg.screen.width - 1) / 2.0, y=(cfg.screen.height - 1) / 2.0, t=0.0
    )
    if rng is None:
        rng = np.random.default_rng(operator.seed)
    results = []
    for tx, ty in targets:
        ctx = PipelineContext(
            transfer=device,
            screen=cfg.screen,
            sample_rate=cfg.sample_rate,
            start=cursor,
        )
        acq = acquire_target(
            operator,
            ctx,
            (tx, ty),
            target_radius=cfg.target_radius,
            dwell=cfg.dwell,
            timeout=cfg.timeout,
            rng=rng,
        )
        results.append(
            TargetResult(
                x=tx, y=ty, movement_time=acq.movement_time, timed_out=acq.timed_out
            )
        )
        cursor = acq.path[-1]
    return TrialRecord(
        participant_id=participant_id,
        trial_index=trial_index,
        targets=tuple(results),
        trial_total=math.fsum(r.movement_time for r in results),
    )


def run_session(
    cfg: TaskConfig,
    device: TransferParams,
    operator: OperatorParams,
    group: str,
    group_index: int,
    participant_id: int,
    master_seed: int = 0,
    learning_schedule: Callable[[int], float] = default_learning_schedule,
) -> SessionRecord:
    """One participant's full session: every trial on one device.

    The participant's noise stream derives from (master_seed, group index,
    participant index) alone, so sessions are independent of each other and
    can run in any order, or in parallel, without changing a single sample.
    The learning schedule scales tremor and reaction delay per trial.
    """
    rng = np.random.default_rng([master_seed, OPERATOR_STREAM, group_index, participant_id])
    trials = []
    for trial_index in range(1, cfg.trials_per_participant + 1):
        factor = learning_schedule(trial_index)
        trained = replace(
            operator,
            reaction_delay=operator.reaction_delay * factor,
            tremor_sigma=operator.tremor_sigma * factor,
        )
        record = run_trial(
            cfg,
            device,
            trained,
            trial_index,
            participant_id=participant_id,
            start=None,  # each trial restarts from screen center
            rng=rng,
        )
        trials.append(record)
    return SessionRecord(
        session_id=f"sim-{master_seed}-{group}-p{participant_id:02d}",
        group=group,
        source="simulated",
        participant_id=participant_id,
        trials=tuple(trials),
        config=cfg,
    )


def run_experiment(
    cfg: TaskConfig,
    devices: Mapping[str, TransferParams] | None = None,
    operator: OperatorParams = OperatorParams(),
    master_seed: int = 0,
    participants_per_group: int = 8,
    learning_schedule: Callable[[int], float] = default_learning_schedule,
) -> list[SessionRecord]:
    """Run the full multi-group experiment.

    Target sets depend only on (cfg.seed, trial_index), so every participant
    in every group sees the same sequences, mirroring a shared on-screen
    task; operator noise varies per participant via run_session.
    """
    if devices is None:
        devices = default_devices()
    return [
        run_session(
            cfg,
            device,
            operator,
            group,
            gi,
            pid,
            master_seed=master_seed,
            learning_schedule=learning_schedule,
        )
        for gi, (group, device) in enumerate(devices.items())
        for pid in range(participants_per_group)
    ]
