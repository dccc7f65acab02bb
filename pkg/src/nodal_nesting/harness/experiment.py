"""Experiment configuration files."""

import logging
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec
from nodal_nesting.errors import ConfigError
from nodal_nesting.sampler import GridSpec, common_auto_spacing

logger = logging.getLogger(__name__)


class ExperimentConfig(BaseModel):
    """Flat experiment description; unknown keys are rejected.

    ``spacing`` is a number or ``"auto"`` (the largest h <= h_max with R/h an
    integer for every R, shared by all radii).
    """

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    ensemble: EnsembleKind
    dimension: Literal[2, 3] = 2
    band_alpha: float | None = None
    arithmetic_n: int | None = None
    num_waves: int | None = Field(default=None, gt=0)
    radii: list[float] = Field(alias="R", min_length=1)
    spacing: float | Literal["auto"] = "auto"
    replicates: int = Field(default=500, ge=2)
    seed: int = Field(default=0, ge=0)
    output_dir: Path = Path("results")
    build_tree: bool = True
    percolation_only: bool = False
    lemma_suite: bool = False
    threads: int = Field(default=0, ge=0, description="0 uses the settings value or all CPUs")
    resolution_factor: float | None = Field(default=None, gt=0)
    sweep_n: list[int] = Field(default_factory=list)
    planar_radius: float | None = Field(
        default=None,
        alias="planar_R",
        gt=0,
        description="R of the random_plane_wave run the sweep is compared with",
    )
    periodic: bool = False
    dump_replicates: int = Field(
        default=0, ge=0, description="Replicates per R whose field and domains are dumped"
    )

    @field_validator("radii")
    @classmethod
    def _increasing(cls, radii: list[float]) -> list[float]:
        if any(r <= 0 for r in radii):
            raise ValueError("every R must be positive")
        if any(b <= a for a, b in zip(radii, radii[1:], strict=False)):
            raise ValueError("R values must be strictly increasing")
        return radii

    @field_validator("spacing")
    @classmethod
    def _positive_spacing(cls, spacing: float | str) -> float | str:
        if not isinstance(spacing, str) and spacing <= 0:
            raise ValueError("spacing must be positive")
        return spacing

    @model_validator(mode="after")
    def _check_ensemble(self) -> "ExperimentConfig":
        if self.sweep_n:
            if self.ensemble != EnsembleKind.ARITHMETIC_RANDOM_WAVE:
                raise ValueError("sweep_n requires the arithmetic_random_wave ensemble")
            if self.arithmetic_n is None:
                # Each swept n builds its own spec
                return self
        elif self.planar_radius is not None:
            raise ValueError("planar_R only applies to a sweep over sweep_n")
        self.ensemble_spec()
        return self

    def ensemble_spec(self, arithmetic_n: int | None = None) -> EnsembleSpec:
        return EnsembleSpec(
            kind=self.ensemble,
            dimension=self.dimension,
            band_alpha=self.band_alpha,
            arithmetic_n=arithmetic_n if arithmetic_n is not None else self.arithmetic_n,
            num_waves=self.num_waves,
        )

    def grid(self, radius: float, spec: EnsembleSpec | None = None) -> GridSpec:
        """Grid for one radius; spacing is fixed in physical units across the sweep."""
        spec = spec or self.ensemble_spec()
        spacing = (
            common_auto_spacing(spec, self.radii, self.resolution_factor)
            if self.spacing == "auto"
            else self.spacing
        )
        return GridSpec(
            dimension=self.dimension,
            half_width=radius,
            spacing=spacing,
            periodic=self.periodic,
        )

    @property
    def tree_enabled(self) -> bool:
        """Trees are built on planar, non-periodic runs unless switched off."""
        return (
            self.build_tree
            and not self.percolation_only
            and self.dimension == 2
            and not self.periodic
        )


def load_config(path: Path) -> ExperimentConfig:
    """Read a YAML experiment file.

    Raises:
        ConfigError: If the file cannot be read or is not a mapping
        pydantic.ValidationError: If a key is unknown or a value invalid
    """
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping of configuration keys")
    logger.debug("Loaded config %s", path)
    return ExperimentConfig.model_validate(data)
