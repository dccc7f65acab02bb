"""Raw field dumps for external inspection."""

import logging
from pathlib import Path

import numpy as np
import numpy.typing as npt
import yaml

from nodal_nesting.sampler.synthesis import FieldSample

logger = logging.getLogger(__name__)


def write_field(sample: FieldSample, path: Path) -> Path:
    """Write vertex values as little-endian float64 plus a YAML sidecar.

    The array is stored in C order; the sidecar ``<path>.yaml`` records shape,
    spacing, origin coordinates, ensemble and seed.

    Returns:
        Path of the sidecar
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    sample.values.astype("<f8").tofile(path)
    grid = sample.grid
    meta = {
        "format": "float64-le",
        "order": "C",
        "shape": list(grid.shape),
        "spacing": grid.spacing,
        "origin": [-grid.half_width] * grid.dimension,
        "periodic": grid.periodic,
        "seed": sample.seed,
        "ensemble": sample.spec.model_dump(mode="json", exclude_none=True),
        "zero_perturbations": sample.zero_perturbations,
    }
    sidecar = path.with_name(path.name + ".yaml")
    with open(sidecar, "w") as f:
        yaml.safe_dump(meta, f, sort_keys=False)
    logger.debug("Wrote field dump %s", path)
    return sidecar


def read_field(path: Path) -> tuple[npt.NDArray[np.float64], dict[str, object]]:
    """Load a dump written by write_field."""
    sidecar = path.with_name(path.name + ".yaml")
    with open(sidecar) as f:
        meta = yaml.safe_load(f)
    values = np.fromfile(path, dtype="<f8").reshape(meta["shape"])
    return values, meta
