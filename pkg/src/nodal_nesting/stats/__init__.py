"""Monte Carlo estimators over labeled replicates."""

from nodal_nesting.stats.accumulate import (
    RadiusAccumulator,
    ReplicateSummary,
    boundary_connectivity,
    summarize_replicate,
)
from nodal_nesting.stats.estimators import (
    REFERENCE_TAIL_EXPONENT,
    InsufficientTail,
    NoInteriorDomains,
    StatsError,
    connectivity_from_counts,
    connectivity_measure,
    default_tail_window,
    mean_and_se,
    mean_volume_identity,
    nazarov_sodin_estimate,
    percolation_decay,
    percolation_estimate,
    proportion,
    radius_report,
    ratio_estimate,
    tail_exponent,
    total_variation_distance,
    volume_cdf,
)
from nodal_nesting.stats.tables import write_tables

__all__ = [
    "REFERENCE_TAIL_EXPONENT",
    "InsufficientTail",
    "NoInteriorDomains",
    "RadiusAccumulator",
    "ReplicateSummary",
    "StatsError",
    "boundary_connectivity",
    "connectivity_from_counts",
    "connectivity_measure",
    "default_tail_window",
    "mean_and_se",
    "mean_volume_identity",
    "nazarov_sodin_estimate",
    "percolation_decay",
    "percolation_estimate",
    "proportion",
    "radius_report",
    "ratio_estimate",
    "summarize_replicate",
    "tail_exponent",
    "total_variation_distance",
    "volume_cdf",
    "write_tables",
]
