"""Parallel Monte Carlo runs over a list of radii."""

import logging
import math
import os
import shutil
import time
from collections.abc import Iterator, Sequence
from concurrent.futures import Future, ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import UTC, datetime
from pathlib import Path

import yaml

from nodal_nesting import __version__
from nodal_nesting.config import settings
from nodal_nesting.ensembles import EnsembleSpec
from nodal_nesting.errors import NodalNestingError
from nodal_nesting.harness.experiment import ExperimentConfig
from nodal_nesting.harness.seeding import derive_seed
from nodal_nesting.lemmas import run_lemma_suite
from nodal_nesting.models import MonteCarloReport, PercolationDecay, RadiusReport, RunManifest
from nodal_nesting.nodal import build_nesting_tree, label_domains, write_domain_csv
from nodal_nesting.sampler import GridSpec, check_grid, sample_field, write_field
from nodal_nesting.stats import (
    RadiusAccumulator,
    ReplicateSummary,
    mean_volume_identity,
    percolation_decay,
    radius_report,
    summarize_replicate,
    write_tables,
)

logger = logging.getLogger(__name__)

STAGING_DIR = ".staging"


class ReplicateError(NodalNestingError):
    """A replicate raised; the run is aborted without writing tables."""

    def __init__(self, seed: int, radius: float, index: int, cause: BaseException) -> None:
        super().__init__(f"replicate {index} at R={radius} (seed {seed}) failed: {cause}")
        self.seed = seed
        self.radius = radius
        self.index = index


@dataclass(frozen=True)
class ReplicateTask:
    """One (R, replicate) unit of work."""

    radius_index: int
    replicate: int
    seed: int
    spec: EnsembleSpec
    grid: GridSpec
    build_tree: bool
    resolution_factor: float | None = None
    dump_dir: Path | None = None


@dataclass(frozen=True)
class ExperimentOutcome:
    report: MonteCarloReport
    manifest: RunManifest
    output_dir: Path


def run_replicate(task: ReplicateTask) -> ReplicateSummary:
    """Sample, label and summarize one replicate."""
    sample = sample_field(task.spec, task.grid, task.seed, task.resolution_factor)
    labeling = label_domains(sample)
    tree = build_nesting_tree(labeling) if task.build_tree else None
    if task.dump_dir is not None:
        stem = f"R{task.grid.half_width:g}_rep{task.replicate:04d}"
        write_field(sample, task.dump_dir / "fields" / f"{stem}.bin")
        write_domain_csv(labeling, tree, task.dump_dir / "domains" / f"{stem}.csv")
    return summarize_replicate(labeling, tree, task.seed, sample.zero_perturbations)


def publish_dumps(staging: Path, output_dir: Path) -> None:
    """Move staged field and domain dumps into ``output_dir``."""
    for path in sorted(staging.rglob("*")):
        if path.is_file():
            target = output_dir / path.relative_to(staging)
            target.parent.mkdir(parents=True, exist_ok=True)
            path.replace(target)
    shutil.rmtree(staging, ignore_errors=True)


def resolve_threads(requested: int = 0) -> int:
    return requested or settings.threads or os.cpu_count() or 1


def execute(
    tasks: Sequence[ReplicateTask], threads: int
) -> Iterator[tuple[ReplicateTask, ReplicateSummary]]:
    """Run tasks on a thread pool, yielding results as they complete.

    Raises:
        ReplicateError: On the first failing task; pending tasks are cancelled
    """
    pool = ThreadPoolExecutor(max_workers=threads)
    try:
        futures: dict[Future[ReplicateSummary], ReplicateTask] = {
            pool.submit(run_replicate, task): task for task in tasks
        }
        for future in as_completed(futures):
            task = futures[future]
            try:
                summary = future.result()
            except Exception as exc:
                radius = task.grid.half_width
                logger.error(
                    "R=%g replicate %d (seed %d) failed", radius, task.replicate, task.seed
                )
                raise ReplicateError(task.seed, radius, task.replicate, exc) from exc
            yield task, summary
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def _decay(reports: Sequence[RadiusReport]) -> PercolationDecay | None:
    if len(reports) < 3:
        return None
    try:
        return percolation_decay([r.radius for r in reports], [r.percolation for r in reports])
    except ValueError as exc:
        logger.warning("percolation decay fit skipped: %s", exc)
        return None


def run_experiment(config: ExperimentConfig, command: str = "simulate") -> ExperimentOutcome:
    """Run every (R, replicate) task, aggregate, and write tables plus a manifest.

    Results are identical for any thread count: seeds come from
    ``derive_seed`` and aggregation uses exact integer sums.

    Raises:
        GridTooCoarse / IncompatiblePeriodicity: Before any sampling
        ReplicateError: If a replicate fails; no CSV is written
    """
    started = datetime.now(UTC)
    clock = time.perf_counter()
    spec = config.ensemble_spec()
    grids = [config.grid(radius, spec) for radius in config.radii]
    for grid in grids:
        check_grid(spec, grid, config.resolution_factor)

    output_dir = config.output_dir
    # dumps land in fields/ and domains/ only once every replicate has succeeded
    staging = output_dir / STAGING_DIR if config.dump_replicates else None
    if staging is not None:
        shutil.rmtree(staging, ignore_errors=True)
    tasks = []
    for index, grid in enumerate(grids):
        for replicate in range(config.replicates):
            dump = replicate < config.dump_replicates
            tasks.append(
                ReplicateTask(
                    radius_index=index,
                    replicate=replicate,
                    seed=derive_seed(config.seed, index, replicate),
                    spec=spec,
                    grid=grid,
                    build_tree=config.tree_enabled,
                    resolution_factor=config.resolution_factor,
                    dump_dir=staging if dump else None,
                )
            )

    threads = resolve_threads(config.threads)
    logger.info(
        "%s: %d radii x %d replicates on %d threads",
        spec.label(),
        len(grids),
        config.replicates,
        threads,
    )
    accumulators = [RadiusAccumulator(total_cells=math.prod(g.cell_shape)) for g in grids]
    step = max(1, len(tasks) // 10)
    try:
        for done, (task, summary) in enumerate(execute(tasks, threads), start=1):
            accumulators[task.radius_index].add(summary)
            if done % step == 0 or done == len(tasks):
                logger.info("%d/%d replicates done", done, len(tasks))
    except ReplicateError:
        if staging is not None:
            shutil.rmtree(staging, ignore_errors=True)
        raise
    if staging is not None:
        publish_dumps(staging, output_dir)

    reports: list[RadiusReport] = []
    for radius, grid, accumulator in zip(config.radii, grids, accumulators, strict=True):
        previous = reports[-1].connectivity if reports else None
        reports.append(
            radius_report(accumulator, radius, grid.spacing, grid.dimension, previous=previous)
        )
    report = MonteCarloReport(
        ensemble=spec, base_seed=config.seed, radii=reports, percolation_decay=_decay(reports)
    )

    files = write_tables(report, output_dir)
    suite = None
    if config.lemma_suite:
        suite = run_lemma_suite(settings.lemma_cases, config.seed, output_dir / "reproducers")

    manifest = RunManifest(
        version=__version__,
        command=command,
        config=config.model_dump(mode="json", by_alias=True),
        started_at=started.isoformat(),
        wall_clock_seconds=time.perf_counter() - clock,
        files=[path.name for path in files],
        percolation_decay=report.percolation_decay,
        volume_identity=mean_volume_identity(report),
        lemma_suite=suite,
    )
    write_manifest(manifest, output_dir)
    return ExperimentOutcome(report=report, manifest=manifest, output_dir=output_dir)


def write_manifest(manifest: RunManifest, output_dir: Path) -> Path:
    path = output_dir / "manifest.yaml"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(manifest.model_dump(mode="json"), f, sort_keys=False)
    logger.info("Wrote manifest %s", path)
    return path
