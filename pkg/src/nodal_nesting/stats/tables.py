"""stats.csv, mu.csv and psi.csv writers."""

import logging
from collections.abc import Iterator
from pathlib import Path

from nodal_nesting.csvio import Cell, write_rows
from nodal_nesting.models import Estimate, MonteCarloReport, RadiusReport

logger = logging.getLogger(__name__)

STATS_COLUMNS = (
    "R",
    "h",
    "replicates",
    "excluded_replicates",
    "c_ns",
    "c_ns_se",
    "P",
    "P_se",
    "T_density",
    "T_density_se",
    "C_density",
    "C_density_se",
    "V_fraction",
    "V_fraction_se",
    "V_minus_P",
    "V_minus_P_se",
    "closure_ratio",
    "closure_ratio_se",
    "mean_connectivity",
    "mean_connectivity_se",
    "mean_interior_volume",
    "mean_interior_volume_se",
    "psi_tail_integral",
    "c_ns_times_psi_mean",
    "alpha",
    "alpha_se",
    "tail_k_min",
    "tail_k_max",
    "tail_curved",
    "tv_to_previous",
    "tree_residual",
    "interior_residual",
    "volume_residual",
    "zero_perturbations",
)
MU_COLUMNS = ("R", "k", "count", "mu_hat", "se")
PSI_COLUMNS = ("R", "t", "psi_hat")


def _pair(estimate: Estimate | None) -> list[Cell]:
    if estimate is None:
        return [None, None]
    return [estimate.value, estimate.se]


def _stats_row(entry: RadiusReport) -> list[Cell]:
    tail = entry.tail
    cdf = entry.volume_cdf
    return [
        entry.radius,
        entry.spacing,
        entry.replicates,
        entry.excluded_replicates,
        *_pair(entry.nazarov_sodin),
        *_pair(entry.percolation),
        *_pair(entry.closure_density),
        *_pair(entry.boundary_connectivity_density),
        *_pair(entry.boundary_volume_fraction),
        *_pair(entry.boundary_minus_percolation),
        *_pair(entry.closure_ratio),
        *_pair(entry.mean_connectivity),
        *_pair(entry.mean_interior_volume),
        cdf.tail_integral if cdf else None,
        entry.nazarov_sodin.value * cdf.tail_integral if cdf else None,
        tail.alpha if tail else None,
        tail.se if tail else None,
        tail.k_min if tail else None,
        tail.k_max if tail else None,
        tail.curved if tail else None,
        entry.tv_to_previous,
        entry.residuals.tree,
        entry.residuals.interior,
        entry.residuals.volume,
        entry.zero_perturbations,
    ]


def _mu_rows(report: MonteCarloReport) -> Iterator[list[Cell]]:
    for entry in report.radii:
        if entry.connectivity is None:
            continue
        measure = entry.connectivity
        for k, count in measure.counts.items():
            yield [entry.radius, k, count, measure.mu[k], measure.se[k]]


def _psi_rows(report: MonteCarloReport) -> Iterator[list[Cell]]:
    for entry in report.radii:
        if entry.volume_cdf is None:
            continue
        for t, psi in zip(entry.volume_cdf.t, entry.volume_cdf.psi, strict=True):
            yield [entry.radius, t, psi]


def write_tables(report: MonteCarloReport, output_dir: Path) -> list[Path]:
    """Write stats.csv, mu.csv and psi.csv; returns the paths written."""
    stats_path = output_dir / "stats.csv"
    mu_path = output_dir / "mu.csv"
    psi_path = output_dir / "psi.csv"
    write_rows(stats_path, STATS_COLUMNS, (_stats_row(entry) for entry in report.radii))
    mu_count = write_rows(mu_path, MU_COLUMNS, _mu_rows(report))
    psi_count = write_rows(psi_path, PSI_COLUMNS, _psi_rows(report))
    logger.info(
        "Wrote %d radii, %d mu rows and %d psi rows to %s",
        len(report.radii),
        mu_count,
        psi_count,
        output_dir,
    )
    return [stats_path, mu_path, psi_path]
