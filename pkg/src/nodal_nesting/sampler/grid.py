"""Regular grids on the cube [-R, R]^d."""

import math
from collections.abc import Sequence
from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from nodal_nesting.config import settings
from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec
from nodal_nesting.errors import NodalNestingError

# Relative slack when checking that R/h is an integer
_TILING_TOLERANCE = 1e-9

# common_auto_spacing gives up below h_max / factor
_SPACING_SEARCH_FACTOR = 64


class SamplerError(NodalNestingError):
    """Base class for sampler errors."""

    pass


class GridTooCoarse(SamplerError):
    """The grid spacing does not resolve the shortest spectral wavelength."""

    pass


class IncompatiblePeriodicity(SamplerError):
    """A periodic grid was requested that the ensemble cannot live on."""

    pass


def _integer_ratio(numerator: float, denominator: float) -> int | None:
    ratio = numerator / denominator
    nearest = round(ratio)
    if nearest >= 1 and abs(ratio - nearest) <= _TILING_TOLERANCE * max(1.0, ratio):
        return int(nearest)
    return None


class GridSpec(BaseModel):
    """Vertices -R + i*h of the cube [-R, R]^d (the torus [-R, R)^d when periodic).

    The origin is always a vertex: R/h must be an integer.
    """

    model_config = ConfigDict(frozen=True)

    dimension: Literal[2, 3] = 2
    half_width: float = Field(gt=0, description="Half side R of the cube")
    spacing: float = Field(gt=0, description="Grid step h")
    periodic: bool = False

    @model_validator(mode="after")
    def _check_tiling(self) -> "GridSpec":
        if _integer_ratio(self.half_width, self.spacing) is None:
            raise ValueError(
                f"half_width/spacing must be a positive integer "
                f"(R={self.half_width}, h={self.spacing})"
            )
        return self

    @property
    def cells_per_side(self) -> int:
        """Number of cells n = 2R/h along each axis."""
        ratio = _integer_ratio(self.half_width, self.spacing)
        assert ratio is not None
        return 2 * ratio

    @property
    def vertices_per_side(self) -> int:
        n = self.cells_per_side
        return n if self.periodic else n + 1

    @property
    def shape(self) -> tuple[int, ...]:
        """Shape of the vertex array."""
        return (self.vertices_per_side,) * self.dimension

    @property
    def cell_shape(self) -> tuple[int, ...]:
        return (self.cells_per_side,) * self.dimension

    @property
    def cell_volume(self) -> float:
        return float(self.spacing**self.dimension)

    @property
    def volume(self) -> float:
        """Vol B(R) = (2R)^d."""
        return float((2.0 * self.half_width) ** self.dimension)

    @property
    def origin_index(self) -> tuple[int, ...]:
        """Multi-index of the origin vertex (and of the cell it anchors)."""
        return (self.cells_per_side // 2,) * self.dimension

    def axis(self) -> npt.NDArray[np.float64]:
        """Vertex coordinates along one axis."""
        return -self.half_width + self.spacing * np.arange(self.vertices_per_side)

    def refined(self) -> "GridSpec":
        """The same cube at half the spacing."""
        return self.model_copy(update={"spacing": self.spacing / 2.0})


def max_spacing(spec: EnsembleSpec, resolution_factor: float | None = None) -> float:
    """h_max = 2*pi / (factor * k_max), one factor-th of the shortest wavelength."""
    factor = resolution_factor or settings.resolution_factor
    return 2.0 * math.pi / (factor * spec.k_max)


def auto_spacing(
    spec: EnsembleSpec, half_width: float, resolution_factor: float | None = None
) -> float:
    """Largest spacing h <= h_max for which R/h is an integer."""
    return half_width / math.ceil(half_width / max_spacing(spec, resolution_factor))


def common_auto_spacing(
    spec: EnsembleSpec, half_widths: Sequence[float], resolution_factor: float | None = None
) -> float:
    """Largest spacing h <= h_max for which every R/h is an integer.

    Candidates are R_min/m for increasing m, so the first that tiles every
    radius is the coarsest one.

    Raises:
        GridTooCoarse: If no candidate within the search range tiles every radius
    """
    smallest = min(half_widths)
    first = math.ceil(smallest / max_spacing(spec, resolution_factor))
    for divisions in range(first, _SPACING_SEARCH_FACTOR * first + 1):
        spacing = smallest / divisions
        if all(_integer_ratio(r, spacing) is not None for r in half_widths):
            return spacing
    raise GridTooCoarse(
        f"no spacing between R_min/{first} and R_min/{_SPACING_SEARCH_FACTOR * first} "
        f"tiles every R in {list(half_widths)}"
    )


def check_grid(
    spec: EnsembleSpec, grid: GridSpec, resolution_factor: float | None = None
) -> None:
    """Validate that a grid suits an ensemble.

    Raises:
        GridTooCoarse: If h > h_max
        IncompatiblePeriodicity: If the dimensions disagree, a periodic grid is
            requested for a non-torus ensemble, or the torus side is not an integer
    """
    if grid.dimension != spec.dimension:
        raise IncompatiblePeriodicity(
            f"grid dimension {grid.dimension} differs from ensemble dimension {spec.dimension}"
        )
    limit = max_spacing(spec, resolution_factor)
    if grid.spacing > limit * (1.0 + _TILING_TOLERANCE):
        raise GridTooCoarse(
            f"spacing {grid.spacing} exceeds h_max={limit:.6g} for {spec.label()}"
        )
    if grid.periodic:
        if spec.kind != EnsembleKind.ARITHMETIC_RANDOM_WAVE:
            raise IncompatiblePeriodicity(
                f"{spec.kind} is stationary on R^d; only arithmetic_random_wave uses a torus grid"
            )
        if _integer_ratio(2.0 * grid.half_width, 1.0) is None:
            raise IncompatiblePeriodicity(
                f"torus side 2R={2.0 * grid.half_width} is not a positive integer"
            )
