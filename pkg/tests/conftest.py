"""Shared fixtures: a small but real simulated corpus, reused across files
because closed-loop sessions are the expensive thing in this suite."""

from dataclasses import replace

import pytest

from gyropoint.harness.config import GroupSpec, RunConfig, run_config_experiment
from gyropoint.operator_model import OperatorParams
from gyropoint.task import CONTROL_DEVICE, TaskConfig
from gyropoint.transfer import preset


@pytest.fixture(scope="session")
def small_config() -> RunConfig:
    return RunConfig(
        task=TaskConfig(seed=7, trials_per_participant=2, timeout=20.0),
        groups={
            "control": GroupSpec(device=CONTROL_DEVICE),
            "iteration2": GroupSpec(device=preset("iteration2")),
        },
        master_seed=7,
        participants_per_group=2,
    )


@pytest.fixture(scope="session")
def small_sessions(small_config):
    return run_config_experiment(small_config)
