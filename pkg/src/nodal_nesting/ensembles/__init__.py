"""Gaussian ensembles: covariances, lattice frequency sets and spectral draws."""

from nodal_nesting.ensembles.covariance import covariance, radial_covariance
from nodal_nesting.ensembles.lattice import (
    LatticePointSet,
    NoRepresentation,
    UnsupportedParameter,
    enumerate_lattice_points,
)
from nodal_nesting.ensembles.spec import EnsembleKind, EnsembleSpec
from nodal_nesting.ensembles.wavevectors import draw_wavevectors

__all__ = [
    "EnsembleKind",
    "EnsembleSpec",
    "LatticePointSet",
    "NoRepresentation",
    "UnsupportedParameter",
    "covariance",
    "draw_wavevectors",
    "enumerate_lattice_points",
    "radial_covariance",
]
