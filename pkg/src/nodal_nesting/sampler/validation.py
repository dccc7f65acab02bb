"""Covariance gate for the sampler."""

import logging
import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field

from nodal_nesting.ensembles import EnsembleSpec, covariance
from nodal_nesting.sampler.grid import GridSpec
from nodal_nesting.sampler.synthesis import sample_field

logger = logging.getLogger(__name__)

MIN_REPLICATES = 100


class CovarianceLagCheck(BaseModel):
    """Empirical versus analytic covariance at one lag."""

    lag: list[float]
    empirical: float
    analytic: float
    standard_error: float
    passed: bool


class CovarianceReport(BaseModel):
    """Result of the sampler covariance gate."""

    ensemble: EnsembleSpec
    grid: GridSpec
    replicates: int
    tolerance: float
    checks: list[CovarianceLagCheck] = Field(default_factory=list)
    passed: bool


def _lag_offsets(lag: Sequence[float], grid: GridSpec) -> tuple[int, ...]:
    offsets = []
    for component in lag:
        steps = component / grid.spacing
        nearest = round(steps)
        if abs(steps - nearest) > 1e-9 * max(1.0, abs(steps)):
            raise ValueError(f"lag {list(lag)} is not a multiple of the spacing {grid.spacing}")
        offsets.append(int(nearest))
    if len(offsets) != grid.dimension:
        raise ValueError(f"lag {list(lag)} must have {grid.dimension} components")
    return tuple(offsets)


def _spatial_product_mean(
    values: npt.NDArray[np.float64], offsets: tuple[int, ...], periodic: bool
) -> float:
    """Average of F(x) F(x + lag) over every vertex pair inside the grid."""
    if periodic:
        shifted = np.roll(values, shift=[-o for o in offsets], axis=tuple(range(values.ndim)))
        return float(np.mean(values * shifted))
    head = []
    tail = []
    for offset, size in zip(offsets, values.shape, strict=True):
        if abs(offset) >= size:
            raise ValueError(f"lag offset {offset} does not fit a grid of {size} vertices")
        if offset >= 0:
            head.append(slice(0, size - offset))
            tail.append(slice(offset, size))
        else:
            head.append(slice(-offset, size))
            tail.append(slice(0, size + offset))
    return float(np.mean(values[tuple(head)] * values[tuple(tail)]))


def validate_covariance(
    spec: EnsembleSpec,
    grid: GridSpec,
    replicates: int,
    lags: Sequence[Sequence[float]],
    tolerance: float,
    base_seed: int = 0,
    resolution_factor: float | None = None,
) -> CovarianceReport:
    """Compare the empirical covariance of the sampler with the analytic one.

    Each replicate contributes the spatial average of F(x) F(x + lag); the
    standard error is taken across replicates. A lag fails only if
    |empirical - analytic| > tolerance + 3 SE.

    Args:
        spec: Ensemble to test
        grid: Sampling grid; every lag must be a multiple of its spacing
        replicates: Number of independent samples (>= 100)
        lags: Physical lag vectors
        tolerance: Absolute tolerance on top of 3 standard errors
        base_seed: Seed of the first replicate; replicate i uses base_seed + i

    Returns:
        CovarianceReport with one check per lag
    """
    if replicates < MIN_REPLICATES:
        raise ValueError(f"covariance validation needs at least {MIN_REPLICATES} replicates")

    offsets = [_lag_offsets(lag, grid) for lag in lags]
    products = np.empty((replicates, len(offsets)))
    for i in range(replicates):
        sample = sample_field(spec, grid, base_seed + i, resolution_factor)
        for j, offset in enumerate(offsets):
            products[i, j] = _spatial_product_mean(sample.values, offset, grid.periodic)

    checks = []
    for j, lag in enumerate(lags):
        empirical = float(products[:, j].mean())
        se = float(products[:, j].std(ddof=1) / math.sqrt(replicates))
        analytic = float(covariance(spec, list(lag)))
        passed = abs(empirical - analytic) <= tolerance + 3.0 * se
        if not passed:
            logger.warning(
                "%s lag %s: empirical %.6f vs analytic %.6f (se %.2g)",
                spec.label(),
                list(lag),
                empirical,
                analytic,
                se,
            )
        checks.append(
            CovarianceLagCheck(
                lag=[float(c) for c in lag],
                empirical=empirical,
                analytic=analytic,
                standard_error=se,
                passed=passed,
            )
        )

    return CovarianceReport(
        ensemble=spec,
        grid=grid,
        replicates=replicates,
        tolerance=tolerance,
        checks=checks,
        passed=all(c.passed for c in checks),
    )


def default_lags(spec: EnsembleSpec, grid: GridSpec) -> list[list[float]]:
    """Lags used by the CLI gate.

    Axis-aligned lags with |lag| in {0, 1, 2, 4} plus the diagonal (1, 1),
    all scaled by 1/8 on the torus.
    """
    scale = 0.125 if grid.periodic else 1.0
    padding = [0.0] * (spec.dimension - 1)
    lags = []
    for r in (0.0, 1.0, 2.0, 4.0):
        steps = round(r * scale / grid.spacing)
        lags.append([steps * grid.spacing, *padding])
    diagonal = round(scale / grid.spacing) * grid.spacing
    lags.append([diagonal, diagonal, *padding[1:]])
    return lags
