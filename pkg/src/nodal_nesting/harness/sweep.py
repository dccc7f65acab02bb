"""Arithmetic random wave sweep over the eigenvalue parameter n."""

import logging
import math
from pathlib import Path

from nodal_nesting.csvio import write_rows
from nodal_nesting.ensembles import EnsembleKind, NoRepresentation
from nodal_nesting.harness.experiment import ExperimentConfig
from nodal_nesting.harness.runner import ReplicateTask, execute, resolve_threads, run_experiment
from nodal_nesting.harness.seeding import derive_seed
from nodal_nesting.models import Estimate, SweepPoint, SweepReport
from nodal_nesting.sampler import check_grid
from nodal_nesting.stats import mean_and_se

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    "n",
    "multiplicity",
    "ratio",
    "ratio_se",
    "planar_equivalent",
    "planar_equivalent_se",
    "planar_c_ns",
    "planar_c_ns_se",
    "relative_difference",
    "skipped",
)


def planar_nazarov_sodin(config: ExperimentConfig, radius: float) -> Estimate:
    """c_NS of the unit frequency random plane wave on [-R, R]^d.

    Uses the sweep's replicate count, seed and thread settings; tables and the
    manifest of this run go to ``output_dir/planar``.
    """
    planar = ExperimentConfig.model_validate(
        {
            "ensemble": EnsembleKind.RANDOM_PLANE_WAVE,
            "dimension": config.dimension,
            "num_waves": config.num_waves,
            "R": [radius],
            "replicates": config.replicates,
            "seed": config.seed,
            "output_dir": config.output_dir / "planar",
            "build_tree": False,
            "threads": config.threads,
            "resolution_factor": config.resolution_factor,
        }
    )
    (entry,) = run_experiment(planar, command="sweep").report.radii
    c_ns = entry.nazarov_sodin
    logger.info("planar c_NS at R=%g: %.6g +- %.2g", radius, c_ns.value, c_ns.se)
    return c_ns


def _compare_with_plane(point: SweepPoint, c_ns: Estimate) -> SweepPoint:
    if point.planar_equivalent is None:
        return point
    difference = (point.planar_equivalent.value - c_ns.value) / c_ns.value
    return point.model_copy(update={"planar_relative_difference": difference})


def sweep_manifold(config: ExperimentConfig) -> SweepReport:
    """Domain counts of f_n on the torus, scaled by n^(d/2) and the torus volume.

    The torus side is 2R for the first configured R (R = 0.5 is the unit
    torus). Each n without a lattice representation is skipped with a warning.
    Dividing the ratio by (2 pi)^d gives the domain density of the unit
    frequency plane wave, comparable with the planar c_NS of random_plane_wave.
    With ``planar_R`` set, that c_NS is estimated and every point records its
    relative difference from it.
    """
    radius = config.radii[0]
    dimension = config.dimension
    points: list[SweepPoint] = []
    threads = resolve_threads(config.threads)
    for index, n in enumerate(config.sweep_n):
        try:
            spec = config.ensemble_spec(arithmetic_n=n)
        except NoRepresentation as exc:
            logger.warning("n=%d skipped: %s", n, exc)
            points.append(SweepPoint(n=n, skipped=str(exc)))
            continue

        grid = config.grid(radius, spec).model_copy(update={"periodic": True})
        check_grid(spec, grid, config.resolution_factor)
        tasks = [
            ReplicateTask(
                radius_index=index,
                replicate=replicate,
                seed=derive_seed(config.seed, index, replicate),
                spec=spec,
                grid=grid,
                build_tree=False,
                resolution_factor=config.resolution_factor,
            )
            for replicate in range(config.replicates)
        ]
        counts = [summary.total_domains for _, summary in execute(tasks, threads)]
        mean, se = mean_and_se(sum(counts), sum(c * c for c in counts), len(counts))
        scale = n ** (dimension / 2) * grid.volume
        ratio = Estimate(value=mean / scale, se=se / scale)
        planar = (2.0 * math.pi) ** dimension
        points.append(
            SweepPoint(
                n=n,
                multiplicity=spec.lattice_points().multiplicity,
                ratio=ratio,
                planar_equivalent=Estimate(value=ratio.value / planar, se=ratio.se / planar),
            )
        )
        logger.info("n=%d: N/n^(d/2) = %.6g +- %.2g", n, ratio.value, ratio.se)

    c_ns = None
    if config.planar_radius is not None:
        c_ns = planar_nazarov_sodin(config, config.planar_radius)
        if c_ns.value > 0.0:
            points = [_compare_with_plane(point, c_ns) for point in points]
        else:
            logger.warning("planar c_NS is zero; relative differences are not reported")

    report = SweepReport(
        dimension=dimension,
        replicates=config.replicates,
        base_seed=config.seed,
        points=points,
        planar_radius=config.planar_radius,
        planar_c_ns=c_ns,
    )
    write_sweep_csv(report, config.output_dir / "sweep.csv")
    return report


def write_sweep_csv(report: SweepReport, path: Path) -> int:
    c_ns = report.planar_c_ns
    rows = []
    for point in report.points:
        ratio = point.ratio
        planar = point.planar_equivalent
        rows.append(
            [
                point.n,
                point.multiplicity,
                ratio.value if ratio else None,
                ratio.se if ratio else None,
                planar.value if planar else None,
                planar.se if planar else None,
                c_ns.value if c_ns else None,
                c_ns.se if c_ns else None,
                point.planar_relative_difference,
                point.skipped,
            ]
        )
    return write_rows(path, SWEEP_COLUMNS, rows)
