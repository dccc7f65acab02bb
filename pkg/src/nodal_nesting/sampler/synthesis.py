"""Gaussian field realizations on regular grids."""

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from nodal_nesting.config import settings
from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec, draw_wavevectors
from nodal_nesting.sampler.grid import GridSpec, check_grid

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

# Waves per einsum call; bounds the (chunk, N) exponential tables in d=3
_WAVE_CHUNK = 64


@dataclass(frozen=True)
class FieldSample:
    """One realization on the vertices of a grid; values are read-only and never 0."""

    values: FloatArray
    spec: EnsembleSpec
    grid: GridSpec
    seed: int
    zero_perturbations: int = 0

    def cell_values(self) -> FloatArray:
        """Anchor (lowest-corner) vertex value of every cell."""
        if self.grid.periodic:
            return self.values
        n = self.grid.cells_per_side
        return self.values[(slice(0, n),) * self.grid.dimension]

    def negated(self) -> "FieldSample":
        """The sample -F, which has the same law."""
        flipped = -self.values
        flipped.setflags(write=False)
        return FieldSample(flipped, self.spec, self.grid, self.seed, self.zero_perturbations)


def superpose(
    wavevectors: FloatArray,
    cos_coefficients: FloatArray,
    sin_coefficients: FloatArray,
    axes: list[FloatArray],
) -> FloatArray:
    """Evaluate sum_j a_j cos(k_j . x) + b_j sin(k_j . x) on a tensor grid.

    Each plane wave factorizes over the axes, so the sum is a contraction of
    one complex exponential table per axis.

    Args:
        wavevectors: Array (M, d)
        cos_coefficients: a_j, shape (M,)
        sin_coefficients: b_j, shape (M,)
        axes: d coordinate vectors

    Returns:
        Array of shape (len(axes[0]), ..., len(axes[d-1]))
    """
    d = len(axes)
    letters = "abc"[:d]
    subscripts = "j," + ",".join(f"j{c}" for c in letters) + "->" + letters
    total = np.zeros(tuple(len(x) for x in axes), dtype=np.float64)
    for start in range(0, wavevectors.shape[0], _WAVE_CHUNK):
        stop = start + _WAVE_CHUNK
        weights = cos_coefficients[start:stop] - 1j * sin_coefficients[start:stop]
        tables = [
            np.exp(1j * np.outer(wavevectors[start:stop, axis], axes[axis])) for axis in range(d)
        ]
        total += np.einsum(subscripts, weights, *tables, optimize=True).real
    return total


def _random_superposition(
    wavevectors: FloatArray, grid: GridSpec, rng: np.random.Generator
) -> FloatArray:
    count = wavevectors.shape[0]
    a = rng.standard_normal(count)
    b = rng.standard_normal(count)
    axes = [grid.axis()] * grid.dimension
    return superpose(wavevectors, a, b, axes) / math.sqrt(count)


def _arithmetic_field(spec: EnsembleSpec, grid: GridSpec, rng: np.random.Generator) -> FloatArray:
    # a_{-λ} = conj(a_λ): summing 2 Re(a_λ e^{2πi<λ,x>}) over one representative
    # per pair is a real superposition of r/2 waves with unit-variance weights.
    half = spec.lattice_points().half().astype(np.float64)
    return _random_superposition(2.0 * np.pi * half, grid, rng)


def _bargmann_fock_field(grid: GridSpec, rng: np.random.Generator) -> FloatArray:
    # Circulant embedding on a torus padded by settings.torus_padding correlation
    # lengths. The covariance factorizes over axes, so do its eigenvalues.
    h = grid.spacing
    side = 2.0 * grid.half_width + 2.0 * settings.torus_padding
    points = max(math.ceil(side / h), grid.vertices_per_side)
    index = np.arange(points)
    lag = h * np.minimum(index, points - index)
    axis_eigenvalues = np.fft.fft(np.exp(-0.5 * lag * lag)).real

    eigenvalues = axis_eigenvalues
    for _ in range(grid.dimension - 1):
        eigenvalues = np.multiply.outer(eigenvalues, axis_eigenvalues)
    total_points = points**grid.dimension
    amplitude = np.sqrt(np.abs(eigenvalues) / total_points)

    shape = (points,) * grid.dimension
    noise = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    field = np.fft.ifftn(noise * amplitude).real * total_points
    crop = (slice(0, grid.vertices_per_side),) * grid.dimension
    return np.ascontiguousarray(field[crop])


def _nudge_zeros(values: FloatArray) -> int:
    zeros = values == 0.0
    count = int(np.count_nonzero(zeros))
    if count:
        # Smallest positive increment at the unit variance scale
        values[zeros] = np.spacing(1.0)
    return count


def sample_field(
    spec: EnsembleSpec,
    grid: GridSpec,
    seed: int,
    resolution_factor: float | None = None,
) -> FieldSample:
    """Draw one realization of the field on the grid vertices.

    - arithmetic_random_wave: exact finite trigonometric sum.
    - random_plane_wave / band_limited: Gaussian superposition of M plane waves.
    - bargmann_fock: spectral synthesis on a padded torus, cropped to the cube.

    Identical (spec, grid, seed) give bit-identical values. For the superposition
    ensembles the random draws do not depend on the grid, so the same seed on a
    refined grid re-evaluates the same continuous field.

    Raises:
        GridTooCoarse: If the spacing exceeds h_max
        IncompatiblePeriodicity: For an unsupported periodic grid
    """
    check_grid(spec, grid, resolution_factor)
    rng = np.random.default_rng(seed)

    if spec.kind == EnsembleKind.BARGMANN_FOCK:
        values = _bargmann_fock_field(grid, rng)
    elif spec.kind == EnsembleKind.ARITHMETIC_RANDOM_WAVE:
        values = _arithmetic_field(spec, grid, rng)
    else:
        values = _random_superposition(draw_wavevectors(spec, rng), grid, rng)

    zeros = _nudge_zeros(values)
    if zeros > settings.zero_alert_fraction * values.size:
        logger.warning(
            "seed %d: %d exact zeros nudged (%.3g%% of vertices)",
            seed,
            zeros,
            100.0 * zeros / values.size,
        )
    values.setflags(write=False)
    return FieldSample(values=values, spec=spec, grid=grid, seed=seed, zero_perturbations=zeros)
