"""Finite frequency sets realizing a spectral measure for superposition synthesis."""

import numpy as np
import numpy.typing as npt

from nodal_nesting.ensembles.lattice import UnsupportedParameter
from nodal_nesting.ensembles.spec import SUPERPOSITION_KINDS, EnsembleKind, EnsembleSpec


def _directions(
    count: int, dimension: int, rng: np.random.Generator, rotation: float | None
) -> npt.NDArray[np.float64]:
    if dimension == 2:
        offset = rng.uniform(0.0, 2.0 * np.pi) if rotation is None else rotation
        angles = offset + 2.0 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(angles), np.sin(angles)])
    # Uniform on the sphere: normalized standard Gaussian vectors
    raw = rng.standard_normal((count, dimension))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def draw_wavevectors(
    spec: EnsembleSpec,
    rng: np.random.Generator,
    rotation: float | None = None,
) -> npt.NDArray[np.float64]:
    """Draw M wavevectors distributed according to the spectral measure.

    In d=2 the directions are M equispaced unit vectors turned by one uniform
    global rotation (or by `rotation` when given); in d=3 they are independent
    uniform points on the sphere. Band-limited radii have density
    proportional to r^(d-1) on [alpha, 1].

    Args:
        spec: A random_plane_wave or band_limited ensemble
        rng: Seeded generator; the result is a pure function of its state
        rotation: Fixed global angle for d=2 (testing)

    Returns:
        Array of shape (M, d)
    """
    if spec.kind not in SUPERPOSITION_KINDS:
        raise UnsupportedParameter(f"{spec.kind} is not sampled by superposition")

    count = spec.waves
    directions = _directions(count, spec.dimension, rng, rotation)
    if spec.kind == EnsembleKind.RANDOM_PLANE_WAVE or spec.is_thin_shell:
        return directions

    assert spec.band_alpha is not None
    d = spec.dimension
    inner = spec.band_alpha**d
    radii = (inner + rng.uniform(0.0, 1.0, count) * (1.0 - inner)) ** (1.0 / d)
    return directions * radii[:, None]
