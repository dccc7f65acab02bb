"""Configuration for nodal-nesting."""

import logging

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide defaults from environment variables."""

    model_config = SettingsConfigDict(env_prefix="NODAL_NESTING_")

    # Worker threads for replicate scheduling (0 = one per CPU)
    threads: int = 0

    log_level: str = "INFO"

    # Significant digits for every number written to CSV
    csv_significant_digits: int = 12

    # Bargmann-Fock torus padding, in correlation lengths, on each side of the cube
    torus_padding: float = 8.0

    # Grid rule: h <= 2*pi / (resolution_factor * k_max)
    resolution_factor: float = 8.0

    # Superposition wave counts
    num_waves_2d: int = 256
    num_waves_3d: int = 512

    # Warn when more than this fraction of vertices needed a zero nudge
    zero_alert_fraction: float = 0.001

    # Number of points on the logarithmic grid of the volume distribution
    psi_grid_points: int = 200

    # Cases per lemma checker when an experiment enables the lemma suite
    lemma_cases: int = 1000

    def default_num_waves(self, dimension: int) -> int:
        """Default superposition size for the given dimension."""
        return self.num_waves_2d if dimension == 2 else self.num_waves_3d


settings = Settings()


def configure_logging(level: str | None = None) -> None:
    """Install the root log handler once.

    Args:
        level: Log level name; defaults to settings.log_level
    """
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
