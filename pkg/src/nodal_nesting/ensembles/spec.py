"""Declarative description of the supported Gaussian ensembles."""

import math
from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from nodal_nesting.config import settings
from nodal_nesting.ensembles.lattice import (
    LatticePointSet,
    UnsupportedParameter,
    enumerate_lattice_points,
)


class EnsembleKind(StrEnum):
    """The four shipped ensembles."""

    BARGMANN_FOCK = "bargmann_fock"
    RANDOM_PLANE_WAVE = "random_plane_wave"
    BAND_LIMITED = "band_limited"
    ARITHMETIC_RANDOM_WAVE = "arithmetic_random_wave"


# Effective spectral cutoff of the Gaussian density exp(-|k|^2/2)
BARGMANN_FOCK_K_MAX = 3.0

SUPERPOSITION_KINDS = frozenset({EnsembleKind.RANDOM_PLANE_WAVE, EnsembleKind.BAND_LIMITED})


class EnsembleSpec(BaseModel):
    """A stationary, unit-variance Gaussian ensemble.

    Spectral measures, for reference (none of this is checked at runtime):
    - bargmann_fock: Gaussian density, all moments finite, ergodic.
    - random_plane_wave: uniform measure on the unit sphere.
    - band_limited: normalized indicator of the annulus band_alpha <= |k| <= 1;
      band_alpha = 1 is the thin-shell limit and equals random_plane_wave.
    - arithmetic_random_wave: uniform atoms on the lattice points of norm sqrt(n),
      scaled by 2*pi; the field lives on the unit torus.
    """

    model_config = ConfigDict(frozen=True)

    kind: EnsembleKind
    dimension: Literal[2, 3] = 2
    band_alpha: float | None = Field(
        default=None,
        description="Inner radius of the spectral annulus (band_limited only)",
    )
    arithmetic_n: int | None = Field(
        default=None,
        description="Eigenvalue parameter n (arithmetic_random_wave only)",
    )
    num_waves: int | None = Field(
        default=None,
        gt=0,
        description="Number of wavevectors for superposition synthesis (default by dimension)",
    )

    @model_validator(mode="after")
    def _check_parameters(self) -> "EnsembleSpec":
        if self.kind == EnsembleKind.BAND_LIMITED:
            if self.band_alpha is None:
                raise UnsupportedParameter("band_limited requires band_alpha")
            if not 0.0 <= self.band_alpha <= 1.0:
                raise UnsupportedParameter(
                    f"band_alpha must lie in [0, 1], got {self.band_alpha}"
                )
        elif self.band_alpha is not None:
            raise UnsupportedParameter(f"band_alpha is not a parameter of {self.kind}")

        if self.kind == EnsembleKind.ARITHMETIC_RANDOM_WAVE:
            if self.arithmetic_n is None:
                raise UnsupportedParameter("arithmetic_random_wave requires arithmetic_n")
            # Raises NoRepresentation when n is not a sum of d squares
            enumerate_lattice_points(self.arithmetic_n, self.dimension)
        elif self.arithmetic_n is not None:
            raise UnsupportedParameter(f"arithmetic_n is not a parameter of {self.kind}")
        return self

    @property
    def waves(self) -> int:
        """Superposition size M."""
        if self.num_waves is not None:
            return self.num_waves
        return settings.default_num_waves(self.dimension)

    @property
    def is_thin_shell(self) -> bool:
        """True when the spectral measure is the unit sphere."""
        return self.kind == EnsembleKind.RANDOM_PLANE_WAVE or (
            self.kind == EnsembleKind.BAND_LIMITED and self.band_alpha == 1.0
        )

    @property
    def k_max(self) -> float:
        """Largest wavenumber the grid must resolve."""
        if self.kind == EnsembleKind.ARITHMETIC_RANDOM_WAVE:
            assert self.arithmetic_n is not None
            return 2.0 * math.pi * math.sqrt(self.arithmetic_n)
        if self.kind == EnsembleKind.BARGMANN_FOCK:
            return BARGMANN_FOCK_K_MAX
        return 1.0

    def lattice_points(self) -> LatticePointSet:
        """Frequency set of an arithmetic random wave."""
        if self.kind != EnsembleKind.ARITHMETIC_RANDOM_WAVE or self.arithmetic_n is None:
            raise UnsupportedParameter(f"{self.kind} has no lattice frequency set")
        return enumerate_lattice_points(self.arithmetic_n, self.dimension)

    def label(self) -> str:
        """Short human-readable identifier used in logs and file names."""
        parts = [str(self.kind), f"d{self.dimension}"]
        if self.band_alpha is not None:
            parts.append(f"alpha{self.band_alpha:g}")
        if self.arithmetic_n is not None:
            parts.append(f"n{self.arithmetic_n}")
        return "-".join(parts)
