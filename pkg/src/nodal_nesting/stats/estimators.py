"""Estimators for the nodal-domain observables, with standard errors."""

import logging
import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence

import numpy as np
from scipy import stats as sps

from nodal_nesting.config import settings
from nodal_nesting.errors import NodalNestingError
from nodal_nesting.models import (
    ConnectivityMeasure,
    Estimate,
    IdentityResiduals,
    MonteCarloReport,
    PercolationDecay,
    RadiusReport,
    TailFit,
    VolumeCDF,
    VolumeIdentity,
)
from nodal_nesting.nodal import NestingTree
from nodal_nesting.stats.accumulate import RadiusAccumulator

logger = logging.getLogger(__name__)

# Fisher exponent of critical percolation clusters, the reference value for alpha
REFERENCE_TAIL_EXPONENT = 187 / 91

MIN_TAIL_BINS = 5
MIN_BIN_COUNT = 10
TAIL_START = 3
TAIL_END_COUNT = 30
MIN_PERCOLATION_REPLICATES = 100


class StatsError(NodalNestingError):
    """Base class for estimator errors."""

    pass


class NoInteriorDomains(StatsError):
    """No replicate has a domain away from the boundary (R too small)."""

    pass


class InsufficientTail(StatsError):
    """Too few well-populated histogram bins for a tail fit."""

    pass


def mean_and_se(total: int, squares: int, count: int) -> tuple[float, float]:
    """Sample mean and its standard error from exact integer sums."""
    if count < 1:
        raise ValueError("no replicates")
    mean = total / count
    if count < 2:
        return mean, math.nan
    # n * sum(x^2) - (sum x)^2 is exact and nonnegative for integers
    spread = count * squares - total * total
    return mean, math.sqrt(spread / (count * count * (count - 1)))


def ratio_estimate(
    sum_y: int, sum_x: int, sum_yy: int, sum_xx: int, sum_xy: int, count: int
) -> Estimate:
    """Pooled ratio sum(y)/sum(x) with a delta-method standard error."""
    if sum_x == 0:
        raise NoInteriorDomains("ratio with an empty denominator")
    ratio = sum_y / sum_x
    if count < 2:
        return Estimate(value=ratio, se=math.nan)
    residual = (sum_yy - 2.0 * ratio * sum_xy + ratio * ratio * sum_xx) / (count - 1)
    se = math.sqrt(max(residual, 0.0) / count) / (sum_x / count)
    return Estimate(value=ratio, se=se)


def proportion(successes: int, trials: int) -> Estimate:
    """Sample proportion with its binomial standard error."""
    if trials < 1:
        raise ValueError("no trials")
    p = successes / trials
    return Estimate(value=p, se=math.sqrt(p * (1.0 - p) / trials))


def nazarov_sodin_estimate(counts: Sequence[int], ball_volume: float) -> Estimate:
    """Mean and SE of N(F; R) / Vol B(R) across replicates."""
    if len(counts) < 2:
        raise ValueError("the Nazarov-Sodin estimate needs at least 2 replicates")
    values = [int(c) for c in counts]
    mean, se = mean_and_se(sum(values), sum(v * v for v in values), len(values))
    return Estimate(value=mean / ball_volume, se=se / ball_volume)


def percolation_estimate(flags: Sequence[bool]) -> Estimate:
    """Fraction of replicates whose origin domain meets the boundary."""
    if len(flags) < MIN_PERCOLATION_REPLICATES:
        logger.warning(
            "percolation estimate from %d replicates (fewer than %d)",
            len(flags),
            MIN_PERCOLATION_REPLICATES,
        )
    return proportion(sum(bool(f) for f in flags), len(flags))


def connectivity_from_counts(
    counts: Mapping[int, int], excluded_replicates: int = 0
) -> ConnectivityMeasure:
    """Normalize a pooled interior degree histogram.

    Raises:
        NoInteriorDomains: If the histogram is empty
    """
    total = sum(counts.values())
    if total == 0:
        raise NoInteriorDomains("no interior domains in any replicate")
    mu = {k: counts[k] / total for k in sorted(counts) if counts[k]}
    se = {k: math.sqrt(p * (1.0 - p) / total) for k, p in mu.items()}
    return ConnectivityMeasure(
        counts={k: counts[k] for k in mu},
        total=total,
        mu=mu,
        se=se,
        excluded_replicates=excluded_replicates,
    )


def connectivity_measure(trees: Iterable[NestingTree]) -> ConnectivityMeasure:
    """Pool the interior degree histograms of several replicates.

    Replicates without interior domains are counted and left out.
    """
    counts: Counter[int] = Counter()
    excluded = 0
    for tree in trees:
        if not tree.interior.any():
            excluded += 1
            continue
        counts.update(tree.interior_degree_counts())
    return connectivity_from_counts(counts, excluded)


def total_variation_distance(a: ConnectivityMeasure, b: ConnectivityMeasure) -> float:
    """Half the l1 distance between two connectivity measures."""
    support = set(a.mu) | set(b.mu)
    return 0.5 * sum(abs(a.mu.get(k, 0.0) - b.mu.get(k, 0.0)) for k in support)


def volume_cdf(
    volume_counts: Mapping[float, int],
    c_ns: float,
    ball_volume: float,
    replicates: int,
    min_volume: float,
    points: int | None = None,
) -> VolumeCDF:
    """Empirical Psi(t) on a logarithmic grid spanning [min_volume, ball_volume].

    Psi(t) counts pooled interior domains of volume strictly below t, divided
    by c_ns * ball_volume * replicates. The tail integral of the step
    function is exact: sum of the volumes over the same normalization.

    Raises:
        NoInteriorDomains: If no interior domain was observed
    """
    normalization = c_ns * ball_volume * replicates
    pooled = sum(volume_counts.values())
    if pooled == 0 or normalization <= 0.0:
        raise NoInteriorDomains("the volume distribution needs at least one interior domain")

    volumes = np.array(sorted(volume_counts), dtype=np.float64)
    weights = np.array([volume_counts[v] for v in sorted(volume_counts)], dtype=np.float64)
    below = np.concatenate([[0.0], np.cumsum(weights)])
    grid = np.geomspace(min_volume, ball_volume, points or settings.psi_grid_points)
    psi = below[np.searchsorted(volumes, grid, side="left")] / normalization
    return VolumeCDF(
        t=grid.tolist(),
        psi=psi.tolist(),
        normalization=normalization,
        tail_integral=float(np.dot(volumes, weights) / normalization),
    )


def default_tail_window(counts: Mapping[int, int]) -> tuple[int, int]:
    """[3, largest k whose count is at least 30]."""
    populated = [k for k, c in counts.items() if c >= TAIL_END_COUNT and k >= TAIL_START]
    if not populated:
        raise InsufficientTail(f"no degree k >= {TAIL_START} has {TAIL_END_COUNT} domains")
    return TAIL_START, max(populated)


def tail_exponent(
    counts: Mapping[int, int], k_min: int | None = None, k_max: int | None = None
) -> TailFit:
    """Least-squares slope of log mu(k) against log k over [k_min, k_max].

    A quadratic fit of the same points measures curvature; the fit is marked
    ``curved`` when the quadratic coefficient exceeds three standard errors,
    as it does for geometric tails.

    Raises:
        InsufficientTail: With fewer than 5 bins of count >= 10 in the window
    """
    if k_min is None or k_max is None:
        default_min, default_max = default_tail_window(counts)
        k_min = default_min if k_min is None else k_min
        k_max = default_max if k_max is None else k_max
    total = sum(counts.values())
    bins = sorted(
        k for k, c in counts.items() if k_min <= k <= k_max and k >= 1 and c >= MIN_BIN_COUNT
    )
    if len(bins) < MIN_TAIL_BINS:
        raise InsufficientTail(
            f"{len(bins)} bins with count >= {MIN_BIN_COUNT} in [{k_min}, {k_max}]"
        )

    log_k = np.log(np.array(bins, dtype=np.float64))
    log_mu = np.log(np.array([counts[k] / total for k in bins], dtype=np.float64))
    fit = sps.linregress(log_k, log_mu)
    coefficients, covariance = np.polyfit(log_k, log_mu, 2, cov=True)
    curvature = float(coefficients[0])
    curvature_se = float(math.sqrt(max(covariance[0, 0], 0.0)))
    return TailFit(
        alpha=float(-fit.slope),
        se=float(fit.stderr),
        k_min=k_min,
        k_max=k_max,
        bins=len(bins),
        curvature=curvature,
        curvature_se=curvature_se,
        curved=abs(curvature) > 3.0 * curvature_se,
    )


def percolation_decay(radii: Sequence[float], estimates: Sequence[Estimate]) -> PercolationDecay:
    """Fit log P = -beta log R + c over the radii with P > 0; 95% t-interval on beta."""
    points = [(r, e.value) for r, e in zip(radii, estimates, strict=True) if e.value > 0.0]
    if len(points) < 3:
        raise ValueError("the decay fit needs at least 3 radii with positive P")
    log_r = np.log([r for r, _ in points])
    log_p = np.log([p for _, p in points])
    fit = sps.linregress(log_r, log_p)
    half_width = float(sps.t.ppf(0.975, len(points) - 2)) * float(fit.stderr)
    beta = float(-fit.slope)
    return PercolationDecay(
        beta=beta,
        se=float(fit.stderr),
        ci_low=beta - half_width,
        ci_high=beta + half_width,
        radii=[r for r, _ in points],
    )


def _pooled_ratio(acc: RadiusAccumulator, numerator: str, denominator: str) -> Estimate:
    return ratio_estimate(
        acc.first[numerator],
        acc.first[denominator],
        acc.second[numerator],
        acc.second[denominator],
        acc.product(denominator, numerator),
        acc.replicates,
    )


def radius_report(
    accumulator: RadiusAccumulator,
    radius: float,
    spacing: float,
    dimension: int,
    previous: ConnectivityMeasure | None = None,
    tail_window: tuple[int, int] | None = None,
) -> RadiusReport:
    """All estimators for one radius from its accumulator."""
    acc = accumulator
    n = acc.replicates
    if n < 2:
        raise ValueError(f"R={radius}: at least 2 replicates are needed, got {n}")
    cells = acc.total_cells
    cell_volume = spacing**dimension
    ball_volume = cells * cell_volume

    def scaled(name: str, scale: float) -> Estimate:
        mean, se = mean_and_se(acc.first[name], acc.second[name], n)
        return Estimate(value=mean / scale, se=se / scale)

    if n < MIN_PERCOLATION_REPLICATES:
        logger.warning("R=%g: percolation estimate from %d replicates", radius, n)

    report = RadiusReport(
        radius=radius,
        spacing=spacing,
        replicates=n,
        excluded_replicates=acc.excluded,
        nazarov_sodin=scaled("N", ball_volume),
        percolation=proportion(acc.first["O"], n),
        closure_density=scaled("T", ball_volume),
        boundary_connectivity_density=scaled("C", ball_volume),
        boundary_volume_fraction=scaled("Vb", cells),
        boundary_minus_percolation=scaled("gap", cells),
        residuals=IdentityResiduals(
            tree=acc.tree_residual,
            interior=acc.interior_residual,
            volume=acc.volume_residual,
        ),
        zero_perturbations=acc.zero_perturbations,
    )
    if acc.first["N"] == 0:
        logger.warning("R=%g: no interior domains in %d replicates", radius, n)
        return report

    closure = _pooled_ratio(acc, "T", "N")
    volume = _pooled_ratio(acc, "I", "N")
    updates: dict[str, object] = {
        "closure_ratio": Estimate(value=2.0 * closure.value, se=2.0 * closure.se),
        "mean_connectivity": Estimate(value=2.0 - 2.0 * closure.value, se=2.0 * closure.se),
        "mean_interior_volume": Estimate(
            value=volume.value * cell_volume, se=volume.se * cell_volume
        ),
        "volume_cdf": volume_cdf(
            {size * cell_volume: number for size, number in acc.volume_counts.items()},
            report.nazarov_sodin.value,
            ball_volume,
            n,
            cell_volume,
        ),
    }
    if acc.has_tree:
        connectivity = connectivity_from_counts(acc.degree_counts, acc.excluded)
        updates["connectivity"] = connectivity
        if previous is not None:
            updates["tv_to_previous"] = total_variation_distance(previous, connectivity)
        try:
            low, high = tail_window if tail_window is not None else (None, None)
            tail = tail_exponent(acc.degree_counts, low, high)
            updates["tail"] = tail
            if tail.curved:
                updates["tail_note"] = "log-log relation is curved; alpha is not a power law"
        except InsufficientTail as exc:
            updates["tail_note"] = str(exc)
    return report.model_copy(update=updates)


def mean_volume_identity(report: MonteCarloReport) -> list[VolumeIdentity]:
    """Compare c_NS times the mean of Psi with the boundary decomposition, per radius.

    Both sides come from the same decomposition of the cube, so the
    discrepancy is a consistency gauge; the substantive trend is V(R)/Vol
    approaching P.
    """
    records = []
    for entry in report.radii:
        c_ns = entry.nazarov_sodin.value
        tail_term = c_ns * entry.volume_cdf.tail_integral if entry.volume_cdf else 0.0
        boundary_term = 1.0 - entry.boundary_volume_fraction.value
        scaled_mean = (
            c_ns * entry.mean_interior_volume.value if entry.mean_interior_volume else None
        )
        records.append(
            VolumeIdentity(
                radius=entry.radius,
                per_sample_residual=entry.residuals.volume,
                tail_term=tail_term,
                boundary_term=boundary_term,
                discrepancy=abs(tail_term - boundary_term),
                discrepancy_se=math.sqrt(2.0) * entry.boundary_volume_fraction.se,
                boundary_minus_percolation=entry.boundary_minus_percolation,
                empirical_mean_volume=(
                    entry.mean_interior_volume.value if entry.mean_interior_volume else None
                ),
                scaled_mean_volume=scaled_mean,
                one_minus_percolation=1.0 - entry.percolation.value,
            )
        )
    return records
