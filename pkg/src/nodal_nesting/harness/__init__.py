"""Configuration-driven experiment runs."""

from nodal_nesting.harness.experiment import ExperimentConfig, load_config
from nodal_nesting.harness.runner import (
    ExperimentOutcome,
    ReplicateError,
    ReplicateTask,
    run_experiment,
    run_replicate,
)
from nodal_nesting.harness.seeding import derive_seed
from nodal_nesting.harness.sweep import sweep_manifold

__all__ = [
    "ExperimentConfig",
    "ExperimentOutcome",
    "ReplicateError",
    "ReplicateTask",
    "derive_seed",
    "load_config",
    "run_experiment",
    "run_replicate",
    "sweep_manifold",
]
